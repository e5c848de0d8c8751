#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scissor/tokens.hpp"
#include "scissor/unionfind.hpp"

namespace scissor {

/// Ordered list of disjoint, non-empty vertex groups covering [0, n).
///
/// The constructor enforces disjointness and coverage, so every instance in
/// circulation satisfies sum |C_i| == n.
class ComponentPartition {
 public:
  /// Throws PartitionMismatch if the groups are not a partition of [0, n).
  ComponentPartition(std::vector<std::vector<Vertex>> groups, std::size_t n);

  std::size_t size() const noexcept { return groups_.size(); }
  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<Vertex>& group(std::size_t i) const { return groups_.at(i); }
  const std::vector<std::vector<Vertex>>& groups() const noexcept { return groups_; }

  /// Group index of every vertex.
  std::vector<std::uint32_t> labels() const;

  /// Groups with members sorted, groups sorted: order-free comparison form.
  std::vector<std::vector<Vertex>> canonical() const;

  bool operator==(const ComponentPartition&) const = default;

 private:
  std::vector<std::vector<Vertex>> groups_;
  std::size_t n_;
};

enum class LogBase { Base10, Natural };

/// N' = min(n, ceil(log(n) / eps^2)), clamped to at least 1.
/// Throws InvalidSize for n == 0 and InvalidEpsilon for eps <= 0 or NaN.
std::size_t sample_size(std::size_t n, double epsilon, LogBase base = LogBase::Base10);

struct SamplePlan {
  double epsilon = 0.0;
  std::size_t sample_size = 0;
  std::vector<Vertex> sampled;
  std::uint64_t seed = 0;
};

/// Draws sample_size(n, epsilon) distinct vertices with Rng(seed).
SamplePlan plan_samples(std::size_t n, double epsilon, std::uint64_t seed,
                        LogBase base = LogBase::Base10);

/// Sampled-vertex connected components.
///
/// Only edges incident to a sampled vertex are unioned; vertices reached by
/// no sampled neighbourhood become singleton groups. Output is ordered by
/// sort_components.
ComponentPartition approx_components(const AdjacencyMap& adj, double epsilon, std::uint64_t seed,
                                     LogBase base = LogBase::Base10);

/// True connected components by breadth-first search, ordered by
/// sort_components.
ComponentPartition exact_components(const AdjacencyMap& adj);

/// Orders groups by the smallest vertex id among each group's
/// maximum-degree members. Membership is untouched.
ComponentPartition sort_components(ComponentPartition partition, const AdjacencyMap& adj);

/// Sort key used by sort_components.
Vertex component_key(const std::vector<Vertex>& group, const AdjacencyMap& adj);

}  // namespace scissor
