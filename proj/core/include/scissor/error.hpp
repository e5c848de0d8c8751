#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scissor {

/// Failure categories raised by the core library.
enum class Errc {
  ZeroNormRow,
  NonFiniteInput,
  InvalidTau,
  InvalidSize,
  IndexOutOfRange,
  LengthMismatch,
  InvalidEpsilon,
  InvalidGraph,
  PartitionMismatch,
  DimMismatch,
  ShapeMismatch,
  InvalidCount,
  InvalidConfig,
  InvalidSpec,
  Format,
  UnsupportedVersion,
  Io,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace scissor
