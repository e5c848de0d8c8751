#include <gtest/gtest.h>

#include <algorithm>

#include "scissor/components.hpp"
#include "scissor/error.hpp"
#include "scissor/harness.hpp"
#include "test_support.hpp"

namespace scissor {
namespace {

using Edges = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
constexpr double kFullSampling = 1e-9;

TEST(SampleSize, Examples) {
  EXPECT_EQ(sample_size(100, 0.05), 100u);    // ceil(2 / 0.0025) = 800
  EXPECT_EQ(sample_size(6272, 0.05), 1519u);  // ceil(3.79740 / 0.0025)
  EXPECT_EQ(sample_size(10, 1.0), 1u);
  EXPECT_EQ(sample_size(1, 0.05), 1u);        // log(1) = 0, clamped
  EXPECT_EQ(sample_size(6272, 0.05, LogBase::Natural), 3498u);
  EXPECT_EQ(sample_size(50, kFullSampling), 50u);
}

TEST(SampleSize, InvalidArguments) {
  for (double eps : {0.0, -0.1, std::nan("")}) {
    try {
      sample_size(10, eps);
      FAIL() << eps;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidEpsilon);
    }
  }
  EXPECT_THROW(sample_size(0, 0.05), Error);
}

TEST(SampleSize, FullSamplingStopsAbove1238) {
  std::size_t first = 0;
  for (std::size_t n = 1; n < 5000 && first == 0; ++n) {
    if (sample_size(n, 0.05) < n) first = n;
  }
  EXPECT_EQ(first, 1239u);
}

TEST(SamplePlan, DistinctAndDeterministic) {
  const auto a = plan_samples(500, 0.1, 7);
  const auto b = plan_samples(500, 0.1, 7);
  EXPECT_EQ(a.sampled, b.sampled);
  EXPECT_EQ(a.sample_size, sample_size(500, 0.1));
  auto sorted = a.sampled;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  EXPECT_EQ(sorted.size(), a.sample_size);
}

TEST(ComponentPartition, RejectsOverlapGapAndEmpty) {
  EXPECT_THROW(ComponentPartition({{0, 1}, {1, 2}}, 3), Error);
  EXPECT_THROW(ComponentPartition({{0, 1}}, 3), Error);
  EXPECT_THROW(ComponentPartition({{0, 1, 2}, {}}, 3), Error);
  EXPECT_THROW(ComponentPartition({{0, 5}}, 2), Error);
  EXPECT_NO_THROW(ComponentPartition({{2}, {0, 1}}, 3));
}

TEST(ExactComponents, Examples) {
  const Edges path{{0, 1}, {1, 2}};
  const auto p = exact_components(AdjacencyMap::from_edges(4, path));
  EXPECT_EQ(p.groups(), (std::vector<std::vector<Vertex>>{{0, 1, 2}, {3}}));

  const auto edgeless = exact_components(AdjacencyMap::from_edges(4, Edges{}));
  EXPECT_EQ(edgeless.groups(), (std::vector<std::vector<Vertex>>{{0}, {1}, {2}, {3}}));

  Edges all;
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = i + 1; j < 4; ++j) all.emplace_back(i, j);
  EXPECT_EQ(exact_components(AdjacencyMap::from_edges(4, all)).groups(),
            (std::vector<std::vector<Vertex>>{{0, 1, 2, 3}}));
}

TEST(ExactComponents, MatchesClosureOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto adj = random_graph(40, seed % 2 ? 0.03 : 0.08, seed);
    const auto oracle = testing::closure_components(testing::closure(testing::dense(adj)));
    EXPECT_EQ(testing::as_sets(exact_components(adj).groups()), oracle);
  }
}

TEST(SortComponents, Examples) {
  const Edges path{{0, 1}, {1, 2}};
  const auto adj = AdjacencyMap::from_edges(4, path);
  const auto sorted = sort_components(ComponentPartition({{3}, {0, 1, 2}}, 4), adj);
  EXPECT_EQ(sorted.groups(), (std::vector<std::vector<Vertex>>{{0, 1, 2}, {3}}));
  EXPECT_EQ(component_key({0, 1, 2}, adj), 1u);

  const auto bare = AdjacencyMap::from_edges(3, Edges{});
  EXPECT_EQ(sort_components(ComponentPartition({{2}, {0}, {1}}, 3), bare).groups(),
            (std::vector<std::vector<Vertex>>{{0}, {1}, {2}}));

  const auto one = sort_components(ComponentPartition({{2, 0, 1}}, 3), bare);
  EXPECT_EQ(one.groups(), (std::vector<std::vector<Vertex>>{{2, 0, 1}}));
}

TEST(SortComponents, HighestDegreeWinsOverSmallestId) {
  // Group {0, 4, 5}: vertex 5 has degree 2, so the key is 5 and group {1..3}
  // (key 2, the path centre) comes first.
  const Edges e{{0, 5}, {4, 5}, {1, 2}, {2, 3}};
  const auto adj = AdjacencyMap::from_edges(6, e);
  const auto p = exact_components(adj);
  EXPECT_EQ(p.groups(), (std::vector<std::vector<Vertex>>{{1, 2, 3}, {0, 4, 5}}));
}

TEST(ApproxComponents, EdgelessAndComplete) {
  const auto bare = AdjacencyMap::from_edges(20, Edges{});
  for (double eps : {0.05, 0.5, 1.0}) EXPECT_EQ(approx_components(bare, eps, 3).size(), 20u);

  Edges all;
  for (std::uint32_t i = 0; i < 20; ++i)
    for (std::uint32_t j = i + 1; j < 20; ++j) all.emplace_back(i, j);
  const auto full = AdjacencyMap::from_edges(20, all);
  for (double eps : {0.05, 0.5, 1.0}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      EXPECT_EQ(approx_components(full, eps, seed).size(), 1u);
    }
  }
}

TEST(ApproxComponents, FullSamplingMatchesExact) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto adj = random_graph(50, 0.04, seed);
    EXPECT_EQ(approx_components(adj, kFullSampling, seed), exact_components(adj));
  }
}

TEST(ApproxComponents, UnsampledEdgeStaysSplit) {
  // n = 10, eps = 1 samples one vertex. If it is neither endpoint of the
  // only edge, the edge is never unioned.
  const Edges e{{3, 4}};
  const auto adj = AdjacencyMap::from_edges(10, e);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto plan = plan_samples(10, 1.0, seed);
    ASSERT_EQ(plan.sample_size, 1u);
    const auto p = approx_components(adj, 1.0, seed);
    if (plan.sampled[0] == 3 || plan.sampled[0] == 4) {
      EXPECT_EQ(p.size(), 9u);
    } else {
      EXPECT_EQ(p.size(), 10u);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(ApproxComponentsProperty, RefinementDominanceDeterminism) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.below(150);
    const double density = std::array{0.01, 0.05, 0.2}[rng.below(3)];
    const double eps = 0.05 + 0.95 * rng.uniform();
    const auto adj = random_graph(n, density, seed);
    const auto exact = exact_components(adj);
    const auto approx = approx_components(adj, eps, seed * 31);
    EXPECT_GE(approx.size(), exact.size());
    const auto labels = exact.labels();
    for (const auto& g : approx.groups()) {
      for (auto v : g) EXPECT_EQ(labels[v], labels[g.front()]);
    }
    EXPECT_EQ(approx, approx_components(adj, eps, seed * 31));
  }
}

TEST(ExactComponentsProperty, LoweringTauNeverIncreasesCount) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto k = testing::clustered_tokens(60, 8, 5, 0.6, seed);
    std::size_t prev = 0;
    for (float tau : {0.0f, 0.2f, 0.4f, 0.6f, 0.8f, 0.9f, 0.99f}) {
      const auto m = exact_components(similarity_graph(k, tau)).size();
      EXPECT_GE(m, prev);
      prev = m;
    }
  }
}

}  // namespace
}  // namespace scissor
