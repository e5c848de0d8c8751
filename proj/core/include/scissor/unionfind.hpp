#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scissor {

using Vertex = std::uint32_t;

/// Disjoint-set forest with grandparent-hop path compression and union by
/// rank. find() mutates, so a UnionFind needs exclusive access even for
/// lookups.
class UnionFind {
 public:
  /// n singleton sets. Throws InvalidSize when n == 0.
  explicit UnionFind(std::size_t n);

  /// Restores a forest from explicit parent/rank arrays. Throws
  /// LengthMismatch, IndexOutOfRange or InvalidGraph (cycle).
  static UnionFind from_forest(std::vector<Vertex> parent, std::vector<std::uint32_t> rank);

  std::size_t size() const noexcept { return parent_.size(); }

  Vertex find(Vertex x);

  /// Unions xs[i] with ys[i] for each i, in order.
  void batch_union(std::span<const Vertex> xs, std::span<const Vertex> ys);

  /// Single-pair form of batch_union.
  void unite(Vertex x, Vertex y);

  /// Points every vertex directly at its root.
  void flatten();

  std::span<const Vertex> parent() const noexcept { return parent_; }
  std::span<const std::uint32_t> rank() const noexcept { return rank_; }

 private:
  UnionFind() = default;
  void check_index(Vertex x) const;
  Vertex find_unchecked(Vertex x);
  void link(Vertex x, Vertex y);

  std::vector<Vertex> parent_;
  std::vector<std::uint32_t> rank_;
};

}  // namespace scissor
