#include "scissor/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {
namespace {

using Vec = std::vector<double>;

double norm(const Vec& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

Vec gaussian(Rng& rng, std::size_t d) {
  Vec v(d);
  for (auto& x : v) x = rng.normal();
  return v;
}

void normalize(Vec& v) {
  const double n = norm(v);
  for (auto& x : v) x /= n;
}

/// k mutually orthogonal unit vectors by modified Gram-Schmidt.
std::vector<Vec> orthonormal_set(Rng& rng, std::size_t k, std::size_t d) {
  std::vector<Vec> basis;
  while (basis.size() < k) {
    Vec v = gaussian(rng, d);
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t c = 0; c < d; ++c) dot += v[c] * b[c];
      for (std::size_t c = 0; c < d; ++c) v[c] -= dot * b[c];
    }
    if (norm(v) < 1e-6) continue;
    normalize(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

double cosine(std::span<const float> a, std::span<const float> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    dot += static_cast<double>(a[c]) * b[c];
    na += static_cast<double>(a[c]) * a[c];
    nb += static_cast<double>(b[c]) * b[c];
  }
  return dot / std::sqrt(na * nb);
}

void check_ascending(std::span<const double> values, const char* what) {
  if (values.empty()) throw Error(Errc::InvalidConfig, std::string(what) + " list is empty");
  if (!std::is_sorted(values.begin(), values.end())) {
    throw Error(Errc::InvalidConfig, std::string(what) + " list must be sorted ascending");
  }
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  return {mean, std::sqrt(var)};
}

}  // namespace

void SyntheticSpec::validate() const {
  if (n_frames == 0 || tokens_per_frame == 0 || dims == 0) {
    throw Error(Errc::InvalidSpec, "frames, tokens and dims must be >= 1");
  }
  if (n_clusters == 0 || n_clusters > dims) {
    throw Error(Errc::InvalidSpec, "clusters must lie in [1, dims]; got " +
                                       std::to_string(n_clusters) + " clusters for " +
                                       std::to_string(dims) + " dims");
  }
  if (n_clusters > n_frames * tokens_per_frame) {
    throw Error(Errc::InvalidSpec, "more clusters than tokens");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(Errc::InvalidSpec, "noise sigma must be finite and >= 0");
  }
  if (!(temporal_drift >= 0.0) || !std::isfinite(temporal_drift)) {
    throw Error(Errc::InvalidSpec, "temporal drift must be finite and >= 0");
  }
}

SyntheticVideo gen_synthetic_video(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_frames;
  const std::size_t m = spec.tokens_per_frame;
  const std::size_t d = spec.dims;
  const std::size_t k = spec.n_clusters;
  Rng rng(spec.seed);

  const auto base = orthonormal_set(rng, k, d);
  TokenMatrix centroids(k, d);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < d; ++j) centroids(c, j) = static_cast<float>(base[c][j]);
  }

  // Every cluster appears at least once: round-robin labels, then shuffle.
  std::vector<std::uint32_t> flat(n * m);
  for (std::size_t g = 0; g < flat.size(); ++g) flat[g] = static_cast<std::uint32_t>(g % k);
  for (std::size_t g = flat.size(); g > 1; --g) {
    std::swap(flat[g - 1], flat[rng.below(g)]);
  }

  std::vector<TokenMatrix> frames;
  std::vector<std::vector<std::uint32_t>> labels(n);
  for (std::size_t f = 0; f < n; ++f) {
    std::vector<Vec> frame_centroids = base;
    if (spec.temporal_drift > 0.0) {
      for (auto& c : frame_centroids) {
        const Vec noise = gaussian(rng, d);
        for (std::size_t j = 0; j < d; ++j) c[j] += spec.temporal_drift * noise[j];
        normalize(c);
      }
    }
    TokenMatrix frame(m, d);
    labels[f].assign(flat.begin() + static_cast<std::ptrdiff_t>(f * m),
                     flat.begin() + static_cast<std::ptrdiff_t>((f + 1) * m));
    for (std::size_t t = 0; t < m; ++t) {
      Vec v = frame_centroids[labels[f][t]];
      if (spec.noise_sigma > 0.0) {
        const Vec noise = gaussian(rng, d);
        for (std::size_t j = 0; j < d; ++j) v[j] += spec.noise_sigma * noise[j];
        normalize(v);
      }
      for (std::size_t j = 0; j < d; ++j) frame(t, j) = static_cast<float>(v[j]);
    }
    frames.push_back(std::move(frame));
  }

  SyntheticVideo out{VideoTokens(std::move(frames)), std::move(labels), std::move(centroids)};

  const TokenMatrix all = out.video.flatten();
  double min_intra = 1.0;
  double max_inter = -1.0;
  for (std::size_t a = 0; a < all.rows(); ++a) {
    for (std::size_t b = a + 1; b < all.rows(); ++b) {
      const double c = cosine(all.row(a), all.row(b));
      if (flat[a] == flat[b]) {
        min_intra = std::min(min_intra, c);
      } else {
        max_inter = std::max(max_inter, c);
      }
    }
  }
  out.min_intra_cosine = min_intra;
  out.max_inter_cosine = max_inter;
  out.margin = min_intra - max_inter;
  if (!(out.margin > 0.0)) {
    throw Error(Errc::InvalidSpec, "noise too large: intra-cluster cosine " +
                                       std::to_string(min_intra) + " <= inter-cluster cosine " +
                                       std::to_string(max_inter));
  }
  return out;
}

AdjacencyMap random_graph(std::size_t n, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(Errc::InvalidConfig, "edge density must lie in [0, 1]");
  }
  Rng rng(seed);
  return AdjacencyMap::from_predicate(n, [&](std::size_t, std::size_t) {
    return rng.uniform() < density;
  });
}

SweepCurve sweep_tau(const VideoTokens& video, std::span<const double> taus, double epsilon,
                     std::size_t runs, std::uint64_t seed) {
  check_ascending(taus, "tau");
  if (runs == 0) throw Error(Errc::InvalidConfig, "runs must be >= 1");
  SweepCurve curve;
  curve.runs = runs;
  for (double tau : taus) {
    std::vector<double> counts;
    for (std::size_t r = 0; r < runs; ++r) {
      const auto cfg =
          PipelineConfig::with_defaults(static_cast<float>(tau), epsilon, derive_seed(seed, r));
      counts.push_back(static_cast<double>(compress_video(video, cfg).temporal_count));
    }
    const auto [mean, sd] = mean_std(counts);
    curve.params.push_back(tau);
    curve.mean_count.push_back(mean);
    curve.std_count.push_back(sd);
  }
  return curve;
}

SweepCurve sweep_epsilon(const VideoTokens& video, double tau, std::span<const double> epsilons,
                         std::size_t runs, std::uint64_t seed) {
  check_ascending(epsilons, "epsilon");
  if (runs == 0) throw Error(Errc::InvalidConfig, "runs must be >= 1");
  SweepCurve curve;
  curve.runs = runs;
  for (double eps : epsilons) {
    std::vector<double> counts;
    for (std::size_t r = 0; r < runs; ++r) {
      const auto cfg =
          PipelineConfig::with_defaults(static_cast<float>(tau), eps, derive_seed(seed, r));
      counts.push_back(static_cast<double>(compress_video(video, cfg).temporal_count));
    }
    const auto [mean, sd] = mean_std(counts);
    curve.params.push_back(eps);
    curve.mean_count.push_back(mean);
    curve.std_count.push_back(sd);
  }
  // Tiny epsilon makes every frame sample all of its vertices.
  const auto full = PipelineConfig::with_defaults(static_cast<float>(tau), 1e-9, seed);
  curve.floor_count = static_cast<double>(compress_video(video, full).temporal_count);
  return curve;
}

std::vector<SelectorRow> compare_selectors(const VideoTokens& video, const TokenMatrix& centroids,
                                           double tau, double epsilon, std::uint64_t seed) {
  if (centroids.cols() != video.dims()) {
    throw Error(Errc::DimMismatch, "centroids and video differ in dimension");
  }
  auto score = [&](Selector s, const CompressionResult& res) {
    SelectorRow row;
    row.selector = s;
    row.final_count = res.final.rows();
    std::vector<double> best_for_centroid(centroids.rows(), -1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < res.final.rows(); ++i) {
      double best = -1.0;
      for (std::size_t c = 0; c < centroids.rows(); ++c) {
        const double cos = cosine(res.final.row(i), centroids.row(c));
        best = std::max(best, cos);
        best_for_centroid[c] = std::max(best_for_centroid[c], cos);
      }
      err += 1.0 - best;
    }
    row.recovery_error = err / static_cast<double>(res.final.rows());
    const auto found = std::count_if(best_for_centroid.begin(), best_for_centroid.end(),
                                     [](double c) { return c >= kCoverageCosine; });
    row.coverage = static_cast<double>(found) / static_cast<double>(centroids.rows());
    return row;
  };

  std::vector<SelectorRow> rows;
  PipelineConfig cfg = PipelineConfig::with_defaults(static_cast<float>(tau), epsilon, seed);
  const CompressionResult scc = compress_video(video, cfg);
  rows.push_back(score(Selector::Scc, scc));
  for (auto s : {Selector::Random, Selector::Uniform, Selector::L2Norm}) {
    PipelineConfig base = cfg;
    base.selector = s;
    base.target_count = scc.temporal_count;
    rows.push_back(score(s, compress_video(video, base)));
  }
  return rows;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(Errc::LengthMismatch, "slope fit needs two or more aligned points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScalingReport timing_scaling(std::span<const std::size_t> sizes, double epsilon, double density,
                             std::size_t repetitions, std::uint64_t seed) {
  if (sizes.empty()) throw Error(Errc::InvalidConfig, "no sizes given");
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw Error(Errc::InvalidConfig, "sizes must be ascending");
  }
  if (repetitions == 0) throw Error(Errc::InvalidConfig, "repetitions must be >= 1");
  ScalingReport report;
  for (auto size : sizes) {
    const AdjacencyMap adj = random_graph(size, density, derive_seed(seed, size));
    std::vector<double> times;
    for (std::size_t r = 0; r < repetitions; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const auto part = approx_components(adj, epsilon, derive_seed(seed, r));
      const auto stop = std::chrono::steady_clock::now();
      if (part.vertex_count() != size) throw Error(Errc::PartitionMismatch, "bad partition");
      times.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    report.rows.push_back({size, times[times.size() / 2]});
  }
  if (report.rows.size() >= 2) {
    std::vector<double> xs, ys;
    for (const auto& r : report.rows) {
      xs.push_back(static_cast<double>(r.size));
      ys.push_back(r.seconds);
    }
    report.exponent = fit_loglog_slope(xs, ys);
  }
  return report;
}

}  // namespace scissor
