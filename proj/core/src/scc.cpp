#include "scissor/scc.hpp"

#include <cmath>
#include <string>

#include "scissor/error.hpp"

namespace scissor {

void SccConfig::validate() const {
  check_tau(tau);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(Errc::InvalidEpsilon, "epsilon must be positive, got " + std::to_string(epsilon));
  }
}

TokenMatrix merge_partition(const TokenMatrix& k, const ComponentPartition& partition) {
  if (partition.vertex_count() != k.rows()) {
    throw Error(Errc::PartitionMismatch, "partition covers " +
                                             std::to_string(partition.vertex_count()) +
                                             " rows, matrix has " + std::to_string(k.rows()));
  }
  const std::size_t d = k.cols();
  TokenMatrix out(partition.size(), d);
  std::vector<double> acc(d);
  for (std::size_t g = 0; g < partition.size(); ++g) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const auto& members = partition.group(g);
    for (auto v : members) {
      const auto r = k.row(v);
      for (std::size_t c = 0; c < d; ++c) acc[c] += r[c];
    }
    const double inv = 1.0 / static_cast<double>(members.size());
    auto dst = out.row(g);
    for (std::size_t c = 0; c < d; ++c) dst[c] = static_cast<float>(acc[c] * inv);
  }
  return out;
}

SccOutput scc_compress(const TokenMatrix& k, const SccConfig& cfg) {
  cfg.validate();
  if (k.rows() == 1) {
    check_rows_normalizable(k);
    return {k, ComponentPartition({{0}}, 1)};
  }
  const AdjacencyMap adj = similarity_graph(k, cfg.tau);
  ComponentPartition partition = approx_components(adj, cfg.epsilon, cfg.seed, cfg.log_base);
  TokenMatrix compressed = merge_partition(k, partition);
  return {std::move(compressed), std::move(partition)};
}

}  // namespace scissor
