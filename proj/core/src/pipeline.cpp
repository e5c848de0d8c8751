#include "scissor/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {

std::string_view to_string(Selector s) noexcept {
  switch (s) {
    case Selector::Scc: return "scc";
    case Selector::Random: return "random";
    case Selector::Uniform: return "uniform";
    case Selector::L2Norm: return "l2norm";
  }
  return "unknown";
}

Selector parse_selector(std::string_view name) {
  for (auto s : {Selector::Scc, Selector::Random, Selector::Uniform, Selector::L2Norm}) {
    if (to_string(s) == name) return s;
  }
  throw Error(Errc::InvalidConfig, "unknown selector '" + std::string(name) + "'");
}

PipelineConfig PipelineConfig::with_defaults(float tau, double epsilon, std::uint64_t seed) {
  PipelineConfig cfg;
  cfg.spatial = SccConfig{tau, epsilon, seed};
  cfg.temporal = SccConfig{tau, epsilon, derive_seed(seed, 0xFFFF'FFFFULL)};
  return cfg;
}

void PipelineConfig::validate() const {
  spatial.validate();
  temporal.validate();
  if (selector != Selector::Scc && !target_count) {
    throw Error(Errc::InvalidConfig,
                std::string("selector '") + std::string(to_string(selector)) + "' needs a target count");
  }
}

std::vector<TokenMatrix> spatial_step(const VideoTokens& video, const SccConfig& cfg) {
  cfg.validate();
  std::vector<TokenMatrix> out;
  out.reserve(video.frames());
  for (std::size_t i = 0; i < video.frames(); ++i) {
    SccConfig frame_cfg = cfg;
    frame_cfg.seed = derive_seed(cfg.seed, i);
    out.push_back(scc_compress(video.frame(i), frame_cfg).compressed);
  }
  return out;
}

TokenMatrix temporal_step(std::span<const TokenMatrix> per_frame, const SccConfig& cfg) {
  const TokenMatrix all = TokenMatrix::concat(per_frame);
  return scc_compress(all, cfg).compressed;
}

namespace {

std::vector<double> inverse_norms(const TokenMatrix& k) {
  std::vector<double> inv(k.rows());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    double sq = 0.0;
    for (float x : k.row(i)) sq += static_cast<double>(x) * x;
    const double norm = std::sqrt(sq);
    if (norm < 1e-12) throw Error(Errc::ZeroNormRow, "row " + std::to_string(i));
    inv[i] = 1.0 / norm;
  }
  return inv;
}

}  // namespace

AssignmentMap assign_sources(const TokenMatrix& all_tokens, const TokenMatrix& retained) {
  if (all_tokens.cols() != retained.cols()) {
    throw Error(Errc::DimMismatch, "sources have " + std::to_string(all_tokens.cols()) +
                                       " dims, targets " + std::to_string(retained.cols()));
  }
  const auto inv_src = inverse_norms(all_tokens);
  const auto inv_dst = inverse_norms(retained);
  const std::size_t d = all_tokens.cols();
  AssignmentMap map;
  map.indices.resize(all_tokens.rows());
  for (std::size_t i = 0; i < all_tokens.rows(); ++i) {
    const auto a = all_tokens.row(i);
    double best = -2.0;
    std::uint32_t best_j = 0;
    for (std::size_t j = 0; j < retained.rows(); ++j) {
      const auto b = retained.row(j);
      double dot = 0.0;
      for (std::size_t c = 0; c < d; ++c) dot += static_cast<double>(a[c]) * b[c];
      const double cos = dot * inv_src[i] * inv_dst[j];
      if (cos > best) {
        best = cos;
        best_j = static_cast<std::uint32_t>(j);
      }
    }
    map.indices[i] = best_j;
  }
  return map;
}

TokenMatrix final_merge(const TokenMatrix& all_tokens, const TokenMatrix& retained,
                        const AssignmentMap& assignment) {
  if (all_tokens.cols() != retained.cols()) {
    throw Error(Errc::ShapeMismatch, "sources and targets differ in dimension");
  }
  if (assignment.indices.size() != all_tokens.rows()) {
    throw Error(Errc::ShapeMismatch, "assignment has " + std::to_string(assignment.indices.size()) +
                                         " entries for " + std::to_string(all_tokens.rows()) +
                                         " sources");
  }
  const std::size_t d = retained.cols();
  const std::size_t m = retained.rows();
  std::vector<double> sums(m * d, 0.0);
  std::vector<std::size_t> counts(m, 0);
  for (std::size_t i = 0; i < all_tokens.rows(); ++i) {
    const auto j = assignment.indices[i];
    if (j >= m) {
      throw Error(Errc::ShapeMismatch, "assignment " + std::to_string(i) + " -> " +
                                           std::to_string(j) + " outside " + std::to_string(m));
    }
    const auto src = all_tokens.row(i);
    for (std::size_t c = 0; c < d; ++c) sums[j * d + c] += src[c];
    ++counts[j];
  }
  TokenMatrix out(m, d);
  for (std::size_t j = 0; j < m; ++j) {
    const auto r = retained.row(j);
    auto dst = out.row(j);
    const double denom = static_cast<double>(counts[j] + 1);
    for (std::size_t c = 0; c < d; ++c) {
      dst[c] = static_cast<float>((sums[j * d + c] + r[c]) / denom);
    }
  }
  return out;
}

std::vector<std::uint32_t> baseline_select_indices(const TokenMatrix& all_tokens, Selector method,
                                                   std::size_t target_count, std::uint64_t seed) {
  const std::size_t n = all_tokens.rows();
  if (target_count < 1 || target_count > n) {
    throw Error(Errc::InvalidCount, "target count " + std::to_string(target_count) +
                                        " outside [1, " + std::to_string(n) + "]");
  }
  std::vector<std::uint32_t> idx;
  switch (method) {
    case Selector::Random: {
      Rng rng(seed);
      idx = rng.sample_without_replacement(n, target_count);
      std::sort(idx.begin(), idx.end());
      break;
    }
    case Selector::Uniform:
      idx.resize(target_count);
      for (std::size_t i = 0; i < target_count; ++i) {
        idx[i] = static_cast<std::uint32_t>(i * n / target_count);
      }
      break;
    case Selector::L2Norm: {
      std::vector<double> norms(n);
      for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        for (float x : all_tokens.row(i)) sq += static_cast<double>(x) * x;
        norms[i] = sq;
      }
      std::vector<std::uint32_t> order(n);
      std::iota(order.begin(), order.end(), 0U);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return norms[a] > norms[b]; });
      idx.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(target_count));
      std::sort(idx.begin(), idx.end());
      break;
    }
    case Selector::Scc:
      throw Error(Errc::InvalidConfig, "scc is not a baseline selector");
  }
  return idx;
}

TokenMatrix baseline_select(const TokenMatrix& all_tokens, Selector method,
                            std::size_t target_count, std::uint64_t seed) {
  return all_tokens.select_rows(baseline_select_indices(all_tokens, method, target_count, seed));
}

CompressionResult compress_video(const VideoTokens& video, const PipelineConfig& cfg) {
  cfg.validate();
  const TokenMatrix all = video.flatten();
  const std::size_t m = video.tokens_per_frame();

  std::vector<std::size_t> spatial_counts;
  TokenMatrix retained(1, 1);
  if (cfg.selector == Selector::Scc) {
    const auto per_frame = spatial_step(video, cfg.spatial);
    for (const auto& f : per_frame) spatial_counts.push_back(f.rows());
    retained = cfg.enable_temporal ? temporal_step(per_frame, cfg.temporal)
                                   : TokenMatrix::concat(per_frame);
  } else {
    const auto idx = baseline_select_indices(all, cfg.selector, *cfg.target_count, cfg.spatial.seed);
    spatial_counts.assign(video.frames(), 0);
    for (auto i : idx) ++spatial_counts[i / m];
    retained = all.select_rows(idx);
  }

  CompressionResult result{retained, retained, {}, std::move(spatial_counts), 0, 0, 0.0, cfg};
  if (cfg.enable_final_merge) {
    result.assignment = assign_sources(all, retained);
    result.final = final_merge(all, retained, result.assignment);
  }
  result.temporal_count = retained.rows();
  result.input_count = all.rows();
  result.retention_ratio =
      static_cast<double>(result.temporal_count) / static_cast<double>(result.input_count);
  return result;
}

TauSearchResult tune_tau(const VideoTokens& video, const PipelineConfig& base, double target_ratio,
                         double tolerance, int max_iterations) {
  if (!(target_ratio > 0.0 && target_ratio <= 1.0)) {
    throw Error(Errc::InvalidConfig, "target ratio must lie in (0, 1]");
  }
  if (base.selector != Selector::Scc) {
    throw Error(Errc::InvalidConfig, "threshold search only applies to the scc selector");
  }
  double lo = 0.0;
  double hi = 1.0;
  std::optional<TauSearchResult> best;
  for (int it = 1; it <= max_iterations; ++it) {
    const auto tau = static_cast<float>((lo + hi) / 2.0);
    PipelineConfig cfg = base;
    cfg.spatial.tau = tau;
    cfg.temporal.tau = tau;
    CompressionResult run = compress_video(video, cfg);
    const double err = std::abs(run.retention_ratio - target_ratio);
    const double achieved = run.retention_ratio;
    if (!best || err < std::abs(best->result.retention_ratio - target_ratio)) {
      best = TauSearchResult{tau, std::move(run), it, false};
    }
    best->iterations = it;
    if (err <= tolerance) {
      best->converged = true;
      break;
    }
    if (achieved < target_ratio) {
      lo = tau;
    } else {
      hi = tau;
    }
  }
  return std::move(*best);
}

}  // namespace scissor
