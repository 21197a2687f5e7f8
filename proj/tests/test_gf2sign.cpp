#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "paperfold/gf2sign.hpp"

namespace {

using namespace paperfold;
using namespace paperfold::gf2sign;

WideMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  WideMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

TEST(Gf2Sign, PrintedL8) {
  const WideMatrix printed = from_rows({{1},
                                        {1, 1},
                                        {0, 1, 1},
                                        {1, 1, 1, 1},
                                        {0, 0, 0, 1, 1},
                                        {0, 0, 1, 1, 1, 1},
                                        {0, 1, 1, 0, 0, 1, 1},
                                        {1, 1, 1, 1, 1, 1, 1, 1}});
  EXPECT_EQ(convert<std::int64_t>(build_tri(TriKind::L, 8)), printed);
}

TEST(Gf2Sign, PrintedM4AndStrictA) {
  EXPECT_EQ(convert<std::int64_t>(build_tri(TriKind::M, 4)), from_rows({{1}, {1, 1}, {1, 1, 1}, {1, 0, 1, 1}}));
  EXPECT_EQ(convert<std::int64_t>(build_tri(TriKind::A_STRICT, 3)), from_rows({{0}, {1, 0}, {1, 1, 0}}));
}

TEST(Gf2Sign, TriangularShapes) {
  for (TriKind kind : {TriKind::L, TriKind::M, TriKind::LTILDE, TriKind::MTILDE, TriKind::LTILDE0, TriKind::MTILDE0}) {
    const TriMatrix m = build_tri(kind, 64);
    const bool strict = kind == TriKind::LTILDE0 || kind == TriKind::MTILDE0;
    for (std::size_t i = 0; i < 64; ++i) {
      ASSERT_EQ(m(i, i), strict ? 0 : 1) << name(kind);
      for (std::size_t j = i + 1; j < 64; ++j) ASSERT_EQ(m(i, j), 0);
    }
  }
  EXPECT_THROW(build_tri(TriKind::L, 0), error);
  EXPECT_THROW(build_tri(TriKind::L, kMaxSize + 1), error);
}

TEST(Gf2Sign, BlockRuleSeedsAndFirstStep) {
  EXPECT_EQ(babab_expand(BlockRule::M_RULE, 0), from_rows({{1}, {1, 1}}));
  EXPECT_EQ(babab_expand(BlockRule::LTILDE0_RULE, 0), from_rows({{0, 0}, {1, 0}}));
  const WideMatrix lm4 = from_rows({{1}, {2, 1}, {2, 2, 1}, {4, 2, 2, 1}});
  EXPECT_EQ(babab_expand(BlockRule::LM_RULE, 1), lm4);
  EXPECT_EQ(mat_mul_small(build_tri(TriKind::L, 4), build_tri(TriKind::M, 4)), lm4);
  EXPECT_EQ(babab_expand(BlockRule::L_RULE, 2), convert<std::int64_t>(build_tri(TriKind::L, 8)));
  EXPECT_THROW(babab_expand(BlockRule::L_RULE, 13), error);
}

TEST(Gf2Sign, BlockChainsAreNested) {
  for (BlockRule rule :
       {BlockRule::L_RULE, BlockRule::M_RULE, BlockRule::LTILDE0_RULE, BlockRule::MTILDE0_RULE, BlockRule::LM_RULE}) {
    WideMatrix prev = babab_expand(rule, 0);
    for (int steps = 1; steps <= 7; ++steps) {
      const WideMatrix next = babab_expand(rule, steps);
      ASSERT_EQ(next.leading(prev.size()), prev) << name(rule) << " " << steps;
      prev = next;
    }
  }
}

TEST(Gf2Sign, MirrorAndPeriodicity) {
  const std::size_t n = 512;
  const TriMatrix l = build_tri(TriKind::L, n);
  const TriMatrix m = build_tri(TriKind::M, n);
  for (std::size_t half = 1; 2 * half <= n; half *= 2) {
    for (std::size_t i = 0; i < half; ++i) {
      for (std::size_t j = 0; j < half; ++j) {
        ASSERT_EQ(l(half + i, j), l(half + i, 2 * half - 1 - j)) << half << " " << i << " " << j;
        ASSERT_EQ(m(half + i, j), m(half - 1 - i, j)) << half << " " << i << " " << j;
        ASSERT_EQ(m(i, j), m(half + i, half + j));
      }
    }
  }
}

TEST(Gf2Sign, HankelBits) {
  EXPECT_EQ(convert<std::int64_t>(hankel_bits(HankelSource::MU_SHIFT0, 2)), from_rows({{1, 1}, {1, 0}}));
  EXPECT_EQ(convert<std::int64_t>(hankel_bits(HankelSource::MU_SHIFT1, 2)), from_rows({{1, 0}, {0, 1}}));
  EXPECT_EQ(convert<std::int64_t>(hankel_bits(HankelSource::MU_SHIFT0, 1)), from_rows({{1}}));
  const TriMatrix h = hankel_bits(HankelSource::MU_SHIFT1, 40);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) ASSERT_EQ(h(i, j), std::has_single_bit(i + j + 2) ? 1 : 0);
}

TEST(Gf2Sign, Thm2SmallCaseIntermediate) {
  const std::size_t n = 4;
  const TriMatrix l = build_tri(TriKind::L, n);
  const WideMatrix inner = mat_mul_small(l * d_a(n), transpose(l));
  EXPECT_EQ(inner, from_rows({{1, 1, 0, 1}, {1, 0, -1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}));
  EXPECT_EQ(d_s(n) * inner * d_s(n), from_rows({{1, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}));
}

TEST(Gf2Sign, VerifiersPassAtSmallAndDeskSizes) {
  for (std::size_t n : {1U, 2U, 3U, 4U, 7U, 16U, 33U, 256U}) {
    EXPECT_TRUE(verify_thm2(n).pass()) << n;
    EXPECT_TRUE(verify_thm3(n).pass()) << n;
    EXPECT_TRUE(verify_prop_mdl(n).pass()) << n;
    EXPECT_TRUE(verify_prop_ml_lm(n).pass()) << n;
    EXPECT_TRUE(verify_thm5(n).pass()) << n;
  }
  EXPECT_TRUE(verify_thm3(512).pass());
  EXPECT_TRUE(verify_babab(256).pass());
}

TEST(Gf2Sign, HandSizedProducts) {
  // M D_e L at N = 2: [[1,0],[1,0]] [[1,0],[1,1]] = [[1,0],[1,0]] = A + D_e.
  const std::size_t n = 2;
  EXPECT_EQ(mat_mul_small(build_tri(TriKind::M, n) * d_e(n), build_tri(TriKind::L, n)), from_rows({{1, 0}, {1, 0}}));
  EXPECT_EQ(mat_mul_small(build_tri(TriKind::M, n), build_tri(TriKind::L, n)), from_rows({{1, 0}, {2, 1}}));
  // Theorem 5 at N = 2: L~(2) = I, so the product is I = H~(2).
  const TriMatrix lt = build_tri(TriKind::LTILDE, n);
  EXPECT_EQ(d_ttilde(n) * (mat_mul_small(lt * d_stilde(n), transpose(lt)) * d_ttilde(n)), from_rows({{1, 0}, {0, 1}}));
}

TEST(Gf2Sign, MatMulSmallBasics) {
  const TriMatrix x = build_tri(TriKind::L, 16);
  EXPECT_EQ(mat_mul_small(TriMatrix::identity(16), x), convert<std::int64_t>(x));
  EXPECT_EQ(mat_mul_small(d_a(16), d_a(16)), WideMatrix::identity(16));
  const std::size_t n = 4;
  EXPECT_EQ(mat_mul_small(build_tri(TriKind::L, n), d_a(n) * (build_tri(TriKind::M, n) * d_a(n))),
            WideMatrix::identity(n));
  EXPECT_THROW(mat_mul_small(build_tri(TriKind::L, 3), build_tri(TriKind::L, 4)), error);
}

TEST(Gf2Sign, DiagonalMasks) {
  const std::size_t n = 9;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(d_e(n)[i] + d_o(n)[i], 1);
    EXPECT_EQ(d_e(n)[i] - d_o(n)[i], d_a(n)[i]);
    EXPECT_EQ(d_a(n)[i], i % 2 == 0 ? 1 : -1);
    EXPECT_EQ(d_s_plus1(n)[i], seq::s(static_cast<std::int64_t>(i) + 1));
  }
}

TEST(Gf2Sign, GeneralEpsDiagonal) {
  EXPECT_EQ(general_eps_diag({1, 1, 1, 1, 1, 1, 1}, 64), DiagSigns(std::vector<std::int8_t>(64, 1)));

  // eps = (+1, -1, +1): the conjugated Hankel carries -1 exactly where i + j = 1.
  const std::vector<int> eps{1, -1, 1};
  const std::size_t n = 4;
  const DiagSigns d = general_eps_diag(eps, n);
  const WideMatrix h = d * (convert<std::int64_t>(hankel_bits(HankelSource::MU_SHIFT0, n)) * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(h(i, j) == -1, i + j == 1) << i << " " << j;

  EXPECT_THROW(general_eps_diag({-1, 1, 1}, 4), error);
  EXPECT_THROW(general_eps_diag({1, 1}, 4), error);
  EXPECT_NO_THROW(general_eps_diag({-1, 1, 1}, 4, true));
}

TEST(Gf2Sign, RandomEpsTwistsFactor) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> eps(7);
    for (auto& e : eps) e = (rng() >> 63) != 0 ? -1 : 1;
    eps[0] = trial % 3 == 0 ? -1 : 1;  // exercise the negated head as well
    EXPECT_TRUE(verify_eps(eps, 64).pass()) << trial;
  }
}

TEST(Gf2Sign, ReportCarriesMismatches) {
  VerifyReport report{"demo", 2};
  report.compare("x", WideMatrix::identity(2), WideMatrix(2));
  ASSERT_EQ(report.failures.size(), 2U);
  EXPECT_EQ(report.failures[0].i, 0U);
  EXPECT_EQ(report.failures[1].i, 1U);
  EXPECT_FALSE(report.pass());
}

}  // namespace
