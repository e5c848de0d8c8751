#include "scissor/components.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {

ComponentPartition::ComponentPartition(std::vector<std::vector<Vertex>> groups, std::size_t n)
    : groups_(std::move(groups)), n_(n) {
  std::vector<bool> seen(n, false);
  std::size_t total = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (groups_[g].empty()) {
      throw Error(Errc::PartitionMismatch, "group " + std::to_string(g) + " is empty");
    }
    for (auto v : groups_[g]) {
      if (v >= n) {
        throw Error(Errc::PartitionMismatch,
                    "vertex " + std::to_string(v) + " outside " + std::to_string(n));
      }
      if (seen[v]) {
        throw Error(Errc::PartitionMismatch, "vertex " + std::to_string(v) + " in two groups");
      }
      seen[v] = true;
    }
    total += groups_[g].size();
  }
  if (total != n) {
    throw Error(Errc::PartitionMismatch,
                "groups cover " + std::to_string(total) + " of " + std::to_string(n) + " vertices");
  }
}

std::vector<std::uint32_t> ComponentPartition::labels() const {
  std::vector<std::uint32_t> out(n_);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    for (auto v : groups_[g]) out[v] = static_cast<std::uint32_t>(g);
  }
  return out;
}

std::vector<std::vector<Vertex>> ComponentPartition::canonical() const {
  auto out = groups_;
  for (auto& g : out) std::sort(g.begin(), g.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t sample_size(std::size_t n, double epsilon, LogBase base) {
  if (n == 0) throw Error(Errc::InvalidSize, "sample_size needs n >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::InvalidEpsilon, "epsilon must be positive, got " + std::to_string(epsilon));
  }
  const double lg = base == LogBase::Base10 ? std::log10(static_cast<double>(n))
                                            : std::log(static_cast<double>(n));
  const double raw = lg / (epsilon * epsilon);
  if (!(raw < static_cast<double>(n))) return n;
  // Guard against ceil() overshooting an exact integer by one rounding step.
  const auto k = static_cast<std::size_t>(std::ceil(raw * (1.0 - 1e-12)));
  return std::clamp<std::size_t>(k, 1, n);
}

SamplePlan plan_samples(std::size_t n, double epsilon, std::uint64_t seed, LogBase base) {
  SamplePlan plan;
  plan.epsilon = epsilon;
  plan.seed = seed;
  plan.sample_size = sample_size(n, epsilon, base);
  Rng rng(seed);
  plan.sampled = rng.sample_without_replacement(n, plan.sample_size);
  return plan;
}

Vertex component_key(const std::vector<Vertex>& group, const AdjacencyMap& adj) {
  Vertex best = group.front();
  for (auto v : group) {
    const auto dv = adj.degree(v);
    const auto db = adj.degree(best);
    if (dv > db || (dv == db && v < best)) best = v;
  }
  return best;
}

ComponentPartition sort_components(ComponentPartition partition, const AdjacencyMap& adj) {
  if (partition.vertex_count() != adj.size()) {
    throw Error(Errc::PartitionMismatch, "partition covers " +
                                             std::to_string(partition.vertex_count()) +
                                             " vertices, graph has " + std::to_string(adj.size()));
  }
  std::vector<std::pair<Vertex, std::size_t>> keyed;
  keyed.reserve(partition.size());
  for (std::size_t g = 0; g < partition.size(); ++g) {
    keyed.emplace_back(component_key(partition.group(g), adj), g);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::vector<Vertex>> groups;
  groups.reserve(keyed.size());
  for (const auto& [key, g] : keyed) groups.push_back(partition.group(g));
  return ComponentPartition(std::move(groups), partition.vertex_count());
}

ComponentPartition approx_components(const AdjacencyMap& adj, double epsilon, std::uint64_t seed,
                                     LogBase base) {
  const std::size_t n = adj.size();
  const SamplePlan plan = plan_samples(n, epsilon, seed, base);

  std::vector<bool> uncovered(n, true);
  UnionFind uf(n);
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;
  for (const Vertex i : plan.sampled) {
    uncovered[i] = false;
    xs.clear();
    ys.clear();
    adj.for_each_neighbor(i, [&](Vertex j) {
      uncovered[j] = false;
      xs.push_back(i);
      ys.push_back(j);
    });
    // Same pair order as one batch over every sampled vertex.
    uf.batch_union(xs, ys);
  }
  uf.flatten();

  const auto parent = uf.parent();
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> slot(n, kNone);
  std::vector<Vertex> roots;
  for (const Vertex i : plan.sampled) {
    const Vertex r = parent[i];
    if (slot[r] == kNone) {
      slot[r] = static_cast<std::uint32_t>(roots.size());
      roots.push_back(r);
    }
  }
  std::vector<std::vector<Vertex>> groups(roots.size());
  for (std::size_t v = 0; v < n; ++v) {
    const auto s = slot[parent[v]];
    if (s != kNone) groups[s].push_back(static_cast<Vertex>(v));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (uncovered[v]) groups.push_back({static_cast<Vertex>(v)});
  }
  return sort_components(ComponentPartition(std::move(groups), n), adj);
}

ComponentPartition exact_components(const AdjacencyMap& adj) {
  const std::size_t n = adj.size();
  std::vector<bool> visited(n, false);
  std::vector<std::vector<Vertex>> groups;
  std::deque<Vertex> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    std::vector<Vertex> group;
    visited[s] = true;
    queue.push_back(static_cast<Vertex>(s));
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      group.push_back(v);
      adj.for_each_neighbor(v, [&](Vertex w) {
        if (!visited[w]) {
          visited[w] = true;
          queue.push_back(w);
        }
      });
    }
    std::sort(group.begin(), group.end());
    groups.push_back(std::move(group));
  }
  return sort_components(ComponentPartition(std::move(groups), n), adj);
}

}  // namespace scissor
