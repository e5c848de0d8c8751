#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "scissor/error.hpp"
#include "scissor/harness.hpp"
#include "scissor/pipeline.hpp"
#include "test_support.hpp"

namespace scissor {
namespace {

const std::vector<float> kA{1, 0, 0, 0};
const std::vector<float> kB{0, 1, 0, 0};
const std::vector<float> kC{0, 0, 1, 0};

TokenMatrix stack(const std::vector<std::vector<float>>& rows) {
  std::vector<float> data;
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return TokenMatrix(rows.size(), rows.front().size(), std::move(data));
}

TEST(SpatialStep, IdenticalFramesCollapse) {
  const auto f = stack({kA, kA, kA});
  const auto out = spatial_step(VideoTokens({f, f}), {0.9f, 0.05, 0});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], stack({kA}));
  EXPECT_EQ(out[1], stack({kA}));
}

TEST(SpatialStep, OrthogonalFramesUnchanged) {
  const auto f = stack({kA, kB, kC});
  const auto g = stack({kC, kA, kB});
  const auto out = spatial_step(VideoTokens({f, g}), {0.5f, 0.05, 0});
  EXPECT_EQ(out[0], f);
  EXPECT_EQ(out[1], g);
}

TEST(SpatialStep, TwoPlantedClusters) {
  const auto f = stack({kA, kA, kB, kB, kA});
  const auto out = spatial_step(VideoTokens({f}), {0.5f, 0.05, 0});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], stack({kA, kB}));
}

TEST(TemporalStep, Examples) {
  const std::vector<TokenMatrix> same{stack({kA}), stack({kA}), stack({kA})};
  EXPECT_EQ(temporal_step(same, {0.9f, 0.05, 0}), stack({kA}));

  const std::vector<TokenMatrix> overlap{stack({kA, kB}), stack({kB, kC})};
  EXPECT_EQ(temporal_step(overlap, {0.5f, 0.05, 0}), stack({kA, kB, kC}));

  const auto reps = testing::clustered_tokens(20, 4, 3, 0.4, 5);
  const SccConfig cfg{0.8f, 0.05, 9};
  EXPECT_EQ(temporal_step(std::vector<TokenMatrix>{reps}, cfg), scc_compress(reps, cfg).compressed);
}

TEST(TemporalStep, DimensionMismatch) {
  const std::vector<TokenMatrix> bad{TokenMatrix::from_rows({{1, 0}}), TokenMatrix::from_rows({{1, 0, 0}})};
  try {
    temporal_step(bad, {0.5f, 0.05, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimMismatch);
  }
}

TEST(AssignSources, Examples) {
  const auto t = stack({kA, kB, kC});
  EXPECT_EQ(assign_sources(t, t).indices, (std::vector<std::uint32_t>{0, 1, 2}));

  const auto src = TokenMatrix::from_rows({{1, 0}, {0, 1}});
  const auto dst = TokenMatrix::from_rows({{1, 0}, {0.6f, 0.8f}});
  EXPECT_EQ(assign_sources(src, dst).indices, (std::vector<std::uint32_t>{0, 1}));

  const auto one = TokenMatrix::from_rows({{0.2f, 0.3f}});
  const auto many = testing::random_tokens(9, 2, 1);
  const auto idx = assign_sources(many, one).indices;
  EXPECT_TRUE(std::all_of(idx.begin(), idx.end(), [](auto j) { return j == 0; }));
}

TEST(AssignSources, TieGoesToSmallestIndex) {
  const auto src = TokenMatrix::from_rows({{1, 1}});
  const auto dst = TokenMatrix::from_rows({{0, 1}, {1, 0}});
  EXPECT_EQ(assign_sources(src, dst).indices, (std::vector<std::uint32_t>{0}));
}

TEST(AssignSources, ZeroNormTarget) {
  try {
    assign_sources(TokenMatrix::from_rows({{1, 0}}), TokenMatrix::from_rows({{0, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroNormRow);
  }
}

TEST(FinalMerge, Examples) {
  const auto t = stack({kA, kB});
  EXPECT_EQ(final_merge(t, t, AssignmentMap{{0, 1}}), t);

  const auto targets = TokenMatrix::from_rows({{1, 0}});
  const auto sources = TokenMatrix::from_rows({{1, 0}, {0.8f, 0.6f}});
  const auto out = final_merge(sources, targets, AssignmentMap{{0, 0}});
  EXPECT_NEAR(out(0, 0), 0.93333, 1e-5);
  EXPECT_NEAR(out(0, 1), 0.2, 1e-6);

  const auto two = TokenMatrix::from_rows({{1, 0}, {0, 1}});
  const auto lonely = final_merge(TokenMatrix::from_rows({{1, 0}}), two, AssignmentMap{{0}});
  EXPECT_EQ(lonely(1, 0), 0.0f);
  EXPECT_EQ(lonely(1, 1), 1.0f);
}

TEST(FinalMerge, ShapeErrors) {
  const auto t = TokenMatrix::from_rows({{1, 0}});
  EXPECT_THROW(final_merge(t, t, AssignmentMap{{0, 0}}), Error);
  EXPECT_THROW(final_merge(t, t, AssignmentMap{{3}}), Error);
  EXPECT_THROW(final_merge(t, TokenMatrix::from_rows({{1, 0, 0}}), AssignmentMap{{0}}), Error);
}

TEST(BaselineSelect, Examples) {
  const auto eight = testing::random_tokens(8, 3, 2);
  EXPECT_EQ(baseline_select_indices(eight, Selector::Uniform, 4, 0),
            (std::vector<std::uint32_t>{0, 2, 4, 6}));

  const auto norms = TokenMatrix::from_rows({{3, 0}, {0, 1}, {2, 0}});
  EXPECT_EQ(baseline_select_indices(norms, Selector::L2Norm, 2, 0), (std::vector<std::uint32_t>{0, 2}));

  std::vector<std::uint32_t> all(8);
  std::iota(all.begin(), all.end(), 0u);
  for (auto s : {Selector::Random, Selector::Uniform, Selector::L2Norm}) {
    EXPECT_EQ(baseline_select_indices(eight, s, 8, 3), all);
    EXPECT_EQ(baseline_select(eight, s, 8, 3), eight);
  }
}

TEST(BaselineSelect, RandomIsSeededAndDistinct) {
  const auto k = testing::random_tokens(50, 3, 2);
  const auto a = baseline_select_indices(k, Selector::Random, 10, 7);
  EXPECT_EQ(a, baseline_select_indices(k, Selector::Random, 10, 7));
  EXPECT_EQ(a.size(), 10u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
}

TEST(BaselineSelect, L2NormTiesPreferSmallerIndex) {
  const auto k = TokenMatrix::from_rows({{1, 0}, {0, 1}, {2, 0}, {-1, 0}});
  EXPECT_EQ(baseline_select_indices(k, Selector::L2Norm, 2, 0), (std::vector<std::uint32_t>{0, 2}));
}

TEST(BaselineSelect, InvalidCount) {
  const auto k = testing::random_tokens(4, 2, 0);
  for (std::size_t c : {0u, 5u}) {
    try {
      baseline_select(k, Selector::Uniform, c, 0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidCount);
    }
  }
}

TEST(CompressVideo, FullRedundancy) {
  const auto f = stack({kB, kB, kB, kB});
  const auto res = compress_video(VideoTokens({f, f, f}), PipelineConfig::with_defaults(0.9f, 0.05, 0));
  EXPECT_EQ(res.temporal_count, 1u);
  EXPECT_EQ(res.final, stack({kB}));
  EXPECT_DOUBLE_EQ(res.retention_ratio, 1.0 / 12.0);
}

TEST(CompressVideo, ZeroRedundancy) {
  const std::vector<float> kD{0, 0, 0, 1};
  const VideoTokens video({stack({kA, kB}), stack({kC, kD})});
  const auto res = compress_video(video, PipelineConfig::with_defaults(0.99f, 0.05, 0));
  EXPECT_EQ(res.temporal_count, 4u);
  EXPECT_EQ(res.final, video.flatten());
  EXPECT_DOUBLE_EQ(res.retention_ratio, 1.0);
}

TEST(CompressVideo, OverlappingFramesRecoverCentroids) {
  const VideoTokens video({stack({kA, kA, kB, kB}), stack({kB, kB, kC, kC})});
  const auto res = compress_video(video, PipelineConfig::with_defaults(0.5f, 0.05, 0));
  EXPECT_EQ(res.spatial_counts, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(res.temporal_count, 3u);
  EXPECT_EQ(res.final, stack({kA, kB, kC}));
  EXPECT_EQ(res.assignment.indices, (std::vector<std::uint32_t>{0, 0, 1, 1, 1, 1, 2, 2}));
}

TEST(CompressVideo, Toggles) {
  const VideoTokens video({stack({kA, kA, kB, kB}), stack({kB, kB, kC, kC})});
  auto cfg = PipelineConfig::with_defaults(0.5f, 0.05, 0);
  cfg.enable_temporal = false;
  const auto no_temporal = compress_video(video, cfg);
  EXPECT_EQ(no_temporal.temporal_count, 4u);
  EXPECT_EQ(no_temporal.retained, stack({kA, kB, kB, kC}));

  cfg = PipelineConfig::with_defaults(0.5f, 0.05, 0);
  cfg.enable_final_merge = false;
  const auto no_merge = compress_video(video, cfg);
  EXPECT_EQ(no_merge.final, no_merge.retained);
  EXPECT_TRUE(no_merge.assignment.indices.empty());
}

TEST(CompressVideo, BaselineNeedsTarget) {
  const VideoTokens video({stack({kA, kB})});
  auto cfg = PipelineConfig::with_defaults(0.5f, 0.05, 0);
  cfg.selector = Selector::Uniform;
  try {
    compress_video(video, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidConfig);
  }
  cfg.target_count = 1;
  const auto res = compress_video(video, cfg);
  EXPECT_EQ(res.temporal_count, 1u);
  EXPECT_EQ(res.spatial_counts, (std::vector<std::size_t>{1}));
}

TEST(Selector, Names) {
  for (auto s : {Selector::Scc, Selector::Random, Selector::Uniform, Selector::L2Norm}) {
    EXPECT_EQ(parse_selector(to_string(s)), s);
  }
  EXPECT_THROW(parse_selector("attention"), Error);
}

TEST(CompressVideoProperty, MergeConservationBoundsAndDeterminism) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(5), m = 2 + rng.below(30), d = 2 + rng.below(10);
    std::vector<TokenMatrix> frames;
    for (std::size_t f = 0; f < n; ++f)
      frames.push_back(testing::clustered_tokens(m, d, 1 + rng.below(5), 0.5, seed * 10 + f));
    const VideoTokens video(std::move(frames));
    auto cfg = PipelineConfig::with_defaults(static_cast<float>(0.6 + 0.35 * rng.uniform()),
                                             0.05 + rng.uniform(), seed);
    const auto res = compress_video(video, cfg);
    const auto all = video.flatten();

    std::size_t spatial_total = 0;
    for (auto c : res.spatial_counts) spatial_total += c;
    EXPECT_LE(res.temporal_count, spatial_total);
    EXPECT_LE(spatial_total, n * m);
    EXPECT_DOUBLE_EQ(res.retention_ratio,
                     static_cast<double>(res.temporal_count) / static_cast<double>(n * m));

    std::vector<std::size_t> counts(res.temporal_count, 0);
    for (auto j : res.assignment.indices) {
      ASSERT_LT(j, res.temporal_count);
      ++counts[j];
    }
    for (std::size_t c = 0; c < d; ++c) {
      long double lhs = 0.0L, rhs = 0.0L;
      float lo = all(0, c), hi = all(0, c);
      for (std::size_t i = 0; i < all.rows(); ++i) {
        rhs += all(i, c);
        lo = std::min(lo, all(i, c));
        hi = std::max(hi, all(i, c));
      }
      for (std::size_t j = 0; j < res.temporal_count; ++j) {
        rhs += res.retained(j, c);
        lhs += static_cast<long double>(counts[j] + 1) * res.final(j, c);
        EXPECT_GE(res.final(j, c), lo - 1e-5f);
        EXPECT_LE(res.final(j, c), hi + 1e-5f);
      }
      EXPECT_LE(testing::rel_err(static_cast<double>(lhs), static_cast<double>(rhs)), 1e-4);
    }

    const auto again = compress_video(video, cfg);
    EXPECT_EQ(again.final, res.final);
    EXPECT_EQ(again.assignment.indices, res.assignment.indices);

    cfg.enable_temporal = false;
    EXPECT_GE(compress_video(video, cfg).temporal_count, res.temporal_count);
  }
}

TEST(CompressVideoProperty, PlantedRecovery) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    SyntheticSpec spec;
    spec.n_frames = 2 + rng.below(6);
    spec.tokens_per_frame = 4 + rng.below(20);
    spec.dims = 24;
    spec.n_clusters = 2 + rng.below(8);
    spec.seed = seed;
    const auto syn = gen_synthetic_video(spec);
    const auto res = compress_video(syn.video, PipelineConfig::with_defaults(0.5f, 0.05, seed));
    ASSERT_EQ(res.final.rows(), spec.n_clusters);
    for (std::size_t j = 0; j < res.final.rows(); ++j) {
      bool matched = false;
      for (std::size_t c = 0; c < spec.n_clusters; ++c) {
        float diff = 0.0f;
        for (std::size_t k = 0; k < spec.dims; ++k)
          diff = std::max(diff, std::abs(res.final(j, k) - syn.centroids(c, k)));
        matched |= diff <= 1e-5f;
      }
      EXPECT_TRUE(matched) << "seed " << seed << " row " << j;
    }
  }
}

TEST(TuneTau, HitsRequestedRatio) {
  SyntheticSpec spec;
  spec.n_frames = 4;
  spec.tokens_per_frame = 64;
  spec.dims = 32;
  spec.n_clusters = 8;
  spec.noise_sigma = 0.05;
  spec.seed = 3;
  const auto syn = gen_synthetic_video(spec);
  const auto base = PipelineConfig::with_defaults(0.9f, 0.05, 1);
  for (double target : {0.25, 0.5}) {
    const auto found = tune_tau(syn.video, base, target);
    EXPECT_TRUE(found.converged) << target;
    EXPECT_NEAR(found.result.retention_ratio, target, 0.01);
    EXPECT_LE(found.iterations, 20);
  }
  EXPECT_THROW(tune_tau(syn.video, base, 0.0), Error);
}

}  // namespace
}  // namespace scissor
