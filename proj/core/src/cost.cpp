#include "scissor/cost.hpp"

#include <cmath>
#include <string>

#include "scissor/error.hpp"

namespace scissor {

void LlmCostConfig::validate() const {
  if (layers == 0 || hidden == 0 || ffn == 0 || decode_len == 0) {
    throw Error(Errc::InvalidCount, "layers, hidden, ffn and decode_len must be >= 1");
  }
}

void OverheadConfig::validate() const {
  if (k1 > frames * per_frame) {
    throw Error(Errc::InvalidCount, "k1 (" + std::to_string(k1) + ") exceeds n*m (" +
                                        std::to_string(frames * per_frame) + ")");
  }
  if (k2 > k1) {
    throw Error(Errc::InvalidCount,
                "k2 (" + std::to_string(k2) + ") exceeds k1 (" + std::to_string(k1) + ")");
  }
}

FlopsReport llm_flops(const LlmCostConfig& cfg) {
  cfg.validate();
  const auto layers = static_cast<double>(cfg.layers);
  const auto d = static_cast<double>(cfg.hidden);
  const auto c = static_cast<double>(cfg.ffn);
  const auto k = static_cast<double>(cfg.tokens);
  const auto r = static_cast<double>(cfg.decode_len);

  FlopsReport rep;
  rep.prefill = layers * (4.0 * k * d * d + 2.0 * k * k * d + 2.0 * k * d * c);
  rep.decode = layers * r * ((4.0 * d * d + 2.0 * d * c) + 2.0 * (d * k + d * (r + 1.0) / 2.0));
  rep.total = rep.prefill + rep.decode;
  return rep;
}

double compression_flops(const OverheadConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<double>(cfg.frames);
  const auto m = static_cast<double>(cfg.per_frame);
  const auto d = static_cast<double>(cfg.hidden);
  const auto k1 = static_cast<double>(cfg.k1);
  const auto k2 = static_cast<double>(cfg.k2);
  return n * 2.0 * m * m * d + 2.0 * k1 * k1 * d + 2.0 * n * m * k2 * d;
}

std::vector<ScenarioRow> scenario_table(const LlmCostConfig& base,
                                        std::span<const double> retention_ratios,
                                        std::span<const OverheadConfig> overhead_per_ratio) {
  if (retention_ratios.size() != overhead_per_ratio.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(retention_ratios.size()) + " ratios vs " +
                                          std::to_string(overhead_per_ratio.size()) +
                                          " overhead configs");
  }
  const double reference = llm_flops(base).total;
  std::vector<ScenarioRow> rows;
  rows.reserve(retention_ratios.size());
  for (std::size_t i = 0; i < retention_ratios.size(); ++i) {
    const double ratio = retention_ratios[i];
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
      throw Error(Errc::InvalidConfig, "retention ratio outside [0, 1]");
    }
    LlmCostConfig cfg = base;
    cfg.tokens = static_cast<std::uint64_t>(std::llround(ratio * static_cast<double>(base.tokens)));
    ScenarioRow row;
    row.retention_ratio = ratio;
    row.tokens = cfg.tokens;
    row.llm_flops = llm_flops(cfg).total;
    row.overhead = compression_flops(overhead_per_ratio[i]);
    row.total = row.llm_flops + row.overhead;
    row.flops_ratio = row.total / reference;
    row.flops_ratio_llm_only = row.llm_flops / reference;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace scissor
