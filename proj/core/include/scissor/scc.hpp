#pragma once

#include <cstdint>

#include "scissor/components.hpp"
#include "scissor/tokens.hpp"

namespace scissor {

/// Parameters of one semantic-connected-components pass.
struct SccConfig {
  float tau = 0.9f;        ///< cosine threshold, [0, 1)
  double epsilon = 0.05;   ///< sampling error tolerance, > 0
  std::uint64_t seed = 0;
  LogBase log_base = LogBase::Base10;

  /// Throws InvalidTau / InvalidEpsilon.
  void validate() const;
};

struct SccOutput {
  TokenMatrix compressed;  ///< one mean row per component, in partition order
  ComponentPartition partition;
};

/// Row i of the result is the mean of K's rows in partition group i.
/// Throws PartitionMismatch when the partition does not cover K's rows.
TokenMatrix merge_partition(const TokenMatrix& k, const ComponentPartition& partition);

/// Threshold graph -> approximate components -> per-component means.
SccOutput scc_compress(const TokenMatrix& k, const SccConfig& cfg);

}  // namespace scissor
