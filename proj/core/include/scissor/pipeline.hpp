#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scissor/scc.hpp"
#include "scissor/tokens.hpp"

namespace scissor {

enum class Selector { Scc, Random, Uniform, L2Norm };

std::string_view to_string(Selector s) noexcept;
/// Throws InvalidConfig for unknown names.
Selector parse_selector(std::string_view name);

struct PipelineConfig {
  SccConfig spatial;
  SccConfig temporal;
  bool enable_temporal = true;
  bool enable_final_merge = true;
  Selector selector = Selector::Scc;
  /// Required for every selector other than Scc.
  std::optional<std::size_t> target_count;

  /// Temporal pass shares the spatial parameters.
  static PipelineConfig with_defaults(float tau, double epsilon, std::uint64_t seed);

  void validate() const;
};

/// indices[i] = retained row most similar to source row i.
struct AssignmentMap {
  std::vector<std::uint32_t> indices;
};

struct CompressionResult {
  TokenMatrix retained;  ///< representative tokens before the final merge
  TokenMatrix final;     ///< tokens handed to the language model
  AssignmentMap assignment;  ///< empty when the final merge is disabled
  std::vector<std::size_t> spatial_counts;
  std::size_t temporal_count = 0;
  std::size_t input_count = 0;
  double retention_ratio = 0.0;
  PipelineConfig config;
};

/// SCC on every frame independently; frame i uses derive_seed(cfg.seed, i).
std::vector<TokenMatrix> spatial_step(const VideoTokens& video, const SccConfig& cfg);

/// SCC over the frame-order concatenation of the per-frame representatives.
TokenMatrix temporal_step(std::span<const TokenMatrix> per_frame, const SccConfig& cfg);

/// Cosine argmax over retained rows for every source row; ties go to the
/// smallest retained index.
AssignmentMap assign_sources(const TokenMatrix& all_tokens, const TokenMatrix& retained);

/// out[j] = (sum of sources assigned to j + retained[j]) / (count_j + 1).
TokenMatrix final_merge(const TokenMatrix& all_tokens, const TokenMatrix& retained,
                        const AssignmentMap& assignment);

/// Row indices chosen by a model-free selector, ascending.
std::vector<std::uint32_t> baseline_select_indices(const TokenMatrix& all_tokens, Selector method,
                                                   std::size_t target_count, std::uint64_t seed);

TokenMatrix baseline_select(const TokenMatrix& all_tokens, Selector method,
                            std::size_t target_count, std::uint64_t seed);

/// Full spatial -> temporal -> merge pipeline (or a baseline selector
/// followed by the same merge).
CompressionResult compress_video(const VideoTokens& video, const PipelineConfig& cfg);

struct TauSearchResult {
  float tau = 0.0f;
  CompressionResult result;
  int iterations = 0;
  bool converged = false;  ///< achieved ratio within the tolerance
};

/// Bisects the shared spatial/temporal threshold to reach `target_ratio`
/// retention within `tolerance` (absolute). Returns the closest run seen.
TauSearchResult tune_tau(const VideoTokens& video, const PipelineConfig& base, double target_ratio,
                         double tolerance = 0.01, int max_iterations = 20);

}  // namespace scissor
