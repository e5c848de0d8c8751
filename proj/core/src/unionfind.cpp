#include "scissor/unionfind.hpp"

#include <numeric>
#include <string>

#include "scissor/error.hpp"

namespace scissor {

UnionFind::UnionFind(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidSize, "union-find needs at least one element");
  parent_.resize(n);
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
  rank_.assign(n, 0);
}

UnionFind UnionFind::from_forest(std::vector<Vertex> parent, std::vector<std::uint32_t> rank) {
  if (parent.empty()) throw Error(Errc::InvalidSize, "union-find needs at least one element");
  if (parent.size() != rank.size()) {
    throw Error(Errc::LengthMismatch, "parent and rank arrays differ in length");
  }
  const std::size_t n = parent.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] >= n) throw Error(Errc::IndexOutOfRange, "parent[" + std::to_string(i) + "]");
  }
  // Every chain must reach a root within n hops.
  for (std::size_t i = 0; i < n; ++i) {
    Vertex x = static_cast<Vertex>(i);
    std::size_t hops = 0;
    while (parent[x] != x) {
      x = parent[x];
      if (++hops > n) throw Error(Errc::InvalidGraph, "parent links contain a cycle");
    }
  }
  UnionFind uf;
  uf.parent_ = std::move(parent);
  uf.rank_ = std::move(rank);
  return uf;
}

void UnionFind::check_index(Vertex x) const {
  if (x >= parent_.size()) {
    throw Error(Errc::IndexOutOfRange,
                std::to_string(x) + " outside " + std::to_string(parent_.size()) + " elements");
  }
}

Vertex UnionFind::find_unchecked(Vertex x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

Vertex UnionFind::find(Vertex x) {
  check_index(x);
  return find_unchecked(x);
}

void UnionFind::link(Vertex x, Vertex y) {
  const Vertex xr = find_unchecked(x);
  const Vertex yr = find_unchecked(y);
  if (xr == yr) return;
  if (rank_[xr] < rank_[yr]) {
    parent_[xr] = yr;
  } else {
    parent_[yr] = xr;
    if (rank_[xr] == rank_[yr]) ++rank_[xr];
  }
}

void UnionFind::batch_union(std::span<const Vertex> xs, std::span<const Vertex> ys) {
  if (xs.size() != ys.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(xs.size()) + " vs " + std::to_string(ys.size()));
  }
  for (auto x : xs) check_index(x);
  for (auto y : ys) check_index(y);
  for (std::size_t i = 0; i < xs.size(); ++i) link(xs[i], ys[i]);
}

void UnionFind::unite(Vertex x, Vertex y) {
  check_index(x);
  check_index(y);
  link(x, y);
}

void UnionFind::flatten() {
  for (std::size_t i = 0; i < parent_.size(); ++i) {
    parent_[i] = find_unchecked(static_cast<Vertex>(i));
  }
}

}  // namespace scissor
