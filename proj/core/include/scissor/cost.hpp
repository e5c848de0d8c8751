#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace scissor {

/// Dimensions of a decoder-only language model for FLOPs accounting.
struct LlmCostConfig {
  std::uint64_t layers = 28;
  std::uint64_t hidden = 3584;
  std::uint64_t ffn = 18944;
  std::uint64_t tokens = 6272;
  std::uint64_t decode_len = 100;

  void validate() const;
};

/// Token counts feeding the compression-overhead estimate.
struct OverheadConfig {
  std::uint64_t frames = 0;
  std::uint64_t per_frame = 0;
  std::uint64_t hidden = 0;
  std::uint64_t k1 = 0;  ///< tokens after the spatial step
  std::uint64_t k2 = 0;  ///< tokens after the temporal step

  void validate() const;
};

struct FlopsReport {
  double prefill = 0.0;
  double decode = 0.0;
  double overhead = 0.0;
  double total = 0.0;
};

/// Prefill + KV-cached decode FLOPs:
///   prefill = L (4kd^2 + 2k^2 d + 2kdc)
///   decode  = L R ((4d^2 + 2dc) + 2(dk + d(R+1)/2))
FlopsReport llm_flops(const LlmCostConfig& cfg);

/// Similarity cost of the compressor: n 2m^2 d + 2 k1^2 d + 2 n m k2 d.
double compression_flops(const OverheadConfig& cfg);

struct ScenarioRow {
  double retention_ratio = 0.0;
  std::uint64_t tokens = 0;
  double llm_flops = 0.0;     ///< prefill + decode
  double overhead = 0.0;
  double total = 0.0;         ///< llm_flops + overhead
  double flops_ratio = 0.0;   ///< total / full-token llm_flops
  double flops_ratio_llm_only = 0.0;
};

/// One row per retention ratio; tokens = round(ratio * base.tokens).
/// Throws LengthMismatch when the lists differ in length.
std::vector<ScenarioRow> scenario_table(const LlmCostConfig& base,
                                        std::span<const double> retention_ratios,
                                        std::span<const OverheadConfig> overhead_per_ratio);

}  // namespace scissor
