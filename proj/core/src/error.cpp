#include "scissor/error.hpp"

namespace scissor {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::ZeroNormRow: return "ZeroNormRow";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::InvalidTau: return "InvalidTau";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidEpsilon: return "InvalidEpsilon";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::PartitionMismatch: return "PartitionMismatch";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::InvalidCount: return "InvalidCount";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::Format: return "Format";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace scissor
