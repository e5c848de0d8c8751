#include <gtest/gtest.h>

#include "scissor/cost.hpp"
#include "scissor/error.hpp"

namespace scissor {
namespace {

LlmCostConfig seven_b(std::uint64_t tokens) { return {28, 3584, 18944, tokens, 100}; }

TEST(LlmFlops, UnitConfig) {
  const auto r = llm_flops({1, 1, 1, 1, 1});
  EXPECT_DOUBLE_EQ(r.prefill, 8.0);
  EXPECT_DOUBLE_EQ(r.decode, 10.0);
  EXPECT_DOUBLE_EQ(r.total, 18.0);
  EXPECT_DOUBLE_EQ(r.overhead, 0.0);
}

TEST(LlmFlops, ReferenceModelFullTokens) {
  const auto r = llm_flops(seven_b(6272));
  EXPECT_NEAR(r.total / 41.4e12, 1.0, 0.05);
  EXPECT_NEAR(r.total, 4.1416e13, 1e9);
  EXPECT_DOUBLE_EQ(r.total, r.prefill + r.decode + r.overhead);
}

TEST(LlmFlops, ZeroTokens) {
  const auto r = llm_flops(seven_b(0));
  const double d = 3584, c = 18944, R = 100;
  EXPECT_DOUBLE_EQ(r.prefill, 0.0);
  EXPECT_DOUBLE_EQ(r.decode, 28 * R * ((4 * d * d + 2 * d * c) + 2 * (d * (R + 1) / 2)));
}

TEST(LlmFlops, RejectsZeroCounts) {
  EXPECT_THROW(llm_flops({0, 1, 1, 1, 1}), Error);
  EXPECT_THROW(llm_flops({1, 0, 1, 1, 1}), Error);
  EXPECT_THROW(llm_flops({1, 1, 0, 1, 1}), Error);
  EXPECT_THROW(llm_flops({1, 1, 1, 1, 0}), Error);
}

TEST(LlmFlops, StrictlyIncreasingInEveryCount) {
  const LlmCostConfig base{4, 64, 256, 100, 10};
  const double t = llm_flops(base).total;
  for (int field = 0; field < 5; ++field) {
    LlmCostConfig up = base;
    switch (field) {
      case 0: ++up.layers; break;
      case 1: ++up.hidden; break;
      case 2: ++up.ffn; break;
      case 3: ++up.tokens; break;
      case 4: ++up.decode_len; break;
    }
    EXPECT_GT(llm_flops(up).total, t) << field;
  }
}

TEST(LlmFlops, PrefillExactlyQuadraticInTokens) {
  // Fit a + b k + c k^2 through k = 1, 2, 3 and predict k = 10, 1000.
  LlmCostConfig cfg{3, 16, 40, 1, 5};
  auto prefill = [&](std::uint64_t k) {
    cfg.tokens = k;
    return llm_flops(cfg).prefill;
  };
  const double p1 = prefill(1), p2 = prefill(2), p3 = prefill(3);
  const double c = (p3 - 2 * p2 + p1) / 2.0;
  const double b = p2 - p1 - 3 * c;
  const double a = p1 - b - c;
  EXPECT_DOUBLE_EQ(a, 0.0);
  EXPECT_DOUBLE_EQ(c, 3.0 * 2.0 * 16.0);  // layers * 2d
  for (std::uint64_t k : {10u, 1000u}) {
    const auto kd = static_cast<double>(k);
    EXPECT_DOUBLE_EQ(prefill(k), a + b * kd + c * kd * kd);
  }
}

TEST(CompressionFlops, Examples) {
  EXPECT_DOUBLE_EQ(compression_flops({2, 3, 4, 2, 2}), 272.0);
  EXPECT_DOUBLE_EQ(compression_flops({5, 7, 3, 0, 0}), 5.0 * 2 * 49 * 3);
  EXPECT_DOUBLE_EQ(compression_flops({0, 0, 6, 0, 0}), 0.0);
}

TEST(CompressionFlops, ZeroFrames) {
  // n = 0 admits only k1 = 0 under k1 <= n m, so 2 k1^2 d vanishes too.
  EXPECT_THROW(compression_flops({0, 10, 4, 3, 1}), Error);
  EXPECT_DOUBLE_EQ(compression_flops({0, 10, 4, 0, 0}), 0.0);
}

TEST(CompressionFlops, LinearInHidden) {
  const OverheadConfig a{4, 16, 10, 30, 8};
  OverheadConfig b = a;
  b.hidden = 30;
  EXPECT_DOUBLE_EQ(compression_flops(b), 3.0 * compression_flops(a));
}

TEST(CompressionFlops, Validation) {
  EXPECT_THROW(compression_flops({1, 2, 1, 3, 0}), Error);  // k1 > n m
  EXPECT_THROW(compression_flops({1, 4, 1, 2, 3}), Error);  // k2 > k1
}

TEST(ScenarioTable, ReferenceRows) {
  const std::vector<double> ratios{1.0, 0.5, 0.35};
  const std::vector<OverheadConfig> none(3);
  const auto rows = scenario_table(seven_b(6272), ratios, none);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0].flops_ratio, 1.0);
  EXPECT_EQ(rows[1].tokens, 3136u);
  EXPECT_EQ(rows[2].tokens, 2195u);
  EXPECT_NEAR(rows[1].total / 18.6e12, 1.0, 0.05);
  EXPECT_NEAR(rows[2].total / 13.4e12, 1.0, 0.05);
  EXPECT_NEAR(rows[1].total, 19.0e12, 0.05e12);
  EXPECT_NEAR(rows[2].total, 13.04e12, 0.05e12);
}

TEST(ScenarioTable, OverheadReportedSeparately) {
  const std::vector<double> ratios{0.1};
  const std::vector<OverheadConfig> oc{{32, 196, 3584, 1000, 627}};
  const auto row = scenario_table(seven_b(6272), ratios, oc).front();
  EXPECT_DOUBLE_EQ(row.total, row.llm_flops + row.overhead);
  EXPECT_GT(row.flops_ratio, row.flops_ratio_llm_only);
  EXPECT_DOUBLE_EQ(row.overhead, compression_flops(oc.front()));
}

TEST(ScenarioTable, LengthMismatch) {
  const std::vector<double> ratios{1.0, 0.5};
  const std::vector<OverheadConfig> one(1);
  try {
    scenario_table(seven_b(6272), ratios, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LengthMismatch);
  }
}

}  // namespace
}  // namespace scissor
