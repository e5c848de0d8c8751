#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scissor/components.hpp"
#include "scissor/pipeline.hpp"
#include "scissor/tokens.hpp"

namespace scissor {

/// Planted-cluster synthetic video description.
struct SyntheticSpec {
  std::size_t n_frames = 4;
  std::size_t tokens_per_frame = 16;
  std::size_t dims = 32;
  std::size_t n_clusters = 3;
  double noise_sigma = 0.0;
  double temporal_drift = 0.0;
  std::uint64_t seed = 0;

  /// Throws InvalidSpec.
  void validate() const;
};

struct SyntheticVideo {
  VideoTokens video;
  /// labels[f][t] = cluster of token t in frame f.
  std::vector<std::vector<std::uint32_t>> labels;
  /// n_clusters x dims, mutually orthogonal unit rows.
  TokenMatrix centroids;
  double min_intra_cosine = 1.0;
  double max_inter_cosine = 0.0;
  /// min_intra_cosine - max_inter_cosine; always > 0.
  double margin = 0.0;
};

/// Every token is normalize(centroid_f[label] + N(0, sigma^2) noise), where
/// centroid_f is the base centroid perturbed by `temporal_drift` per frame.
/// Each cluster appears at least once. Throws InvalidSpec if the realised
/// intra/inter cosine margin is not positive.
SyntheticVideo gen_synthetic_video(const SyntheticSpec& spec);

/// Erdos-Renyi graph: each unordered pair is an edge with probability
/// `density`.
AdjacencyMap random_graph(std::size_t n, double density, std::uint64_t seed);

struct SweepCurve {
  std::vector<double> params;
  std::vector<double> mean_count;
  std::vector<double> std_count;
  std::size_t runs = 0;
  /// Count with every vertex sampled (sweep_epsilon only).
  std::optional<double> floor_count;
};

/// Retained token count of compress_video for each tau (spatial and
/// temporal), averaged over `runs` derived seeds.
SweepCurve sweep_tau(const VideoTokens& video, std::span<const double> taus, double epsilon,
                     std::size_t runs, std::uint64_t seed = 0);

/// Same as sweep_tau but varying epsilon at a fixed tau.
SweepCurve sweep_epsilon(const VideoTokens& video, double tau, std::span<const double> epsilons,
                         std::size_t runs, std::uint64_t seed = 0);

/// Cosine at or above which a final token counts as finding a centroid.
inline constexpr double kCoverageCosine = 0.9;

struct SelectorRow {
  Selector selector = Selector::Scc;
  std::size_t final_count = 0;
  double recovery_error = 0.0;  ///< mean (1 - max cosine to a centroid)
  double coverage = 0.0;        ///< fraction of centroids found
};

/// Runs every selector; non-SCC selectors get the SCC token count as
/// their target.
std::vector<SelectorRow> compare_selectors(const VideoTokens& video, const TokenMatrix& centroids,
                                           double tau, double epsilon, std::uint64_t seed);

struct ScalingRow {
  std::size_t size = 0;
  double seconds = 0.0;  ///< median wall time
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  /// Least-squares slope of log(time) against log(size); needs >= 2 sizes.
  std::optional<double> exponent;
};

/// Times approx_components on random graphs of each size (median of
/// `repetitions`).
ScalingReport timing_scaling(std::span<const std::size_t> sizes, double epsilon,
                             double density = 0.05, std::size_t repetitions = 5,
                             std::uint64_t seed = 0);

/// Least-squares slope of log(y) on log(x).
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace scissor
