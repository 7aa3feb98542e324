#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "towerforge/characters.hpp"
#include "towerforge/criteria.hpp"

using namespace towerforge;

namespace {

// Hand-built candidate that bypasses make_candidate, for the raw condition checks.
TowerCandidate raw(unsigned long p, unsigned m, long h, long f) {
  TowerCandidate c;
  c.p = p;
  c.m = m;
  c.h = h;
  c.f = f;
  c.phi_pm = big_pow(BigInt(p), m - 1) * (p - 1);
  c.h_minus = factorize(BigInt(h));
  return c;
}

}  // namespace

TEST(ConditionI, TableCases) {
  const ConditionI c2 = check_condition_I(raw(2, 7, 21121, 10560), true);
  EXPECT_TRUE(c2.holds);
  // 10560^2 - 4*10560 - 2*21121*64
  EXPECT_EQ(c2.margin, BigInt(111513600) - 42240 - 2703488);
  EXPECT_EQ(c2.margin, 108767872);

  const ConditionI c3 = check_condition_I(raw(3, 4, 2593, 648), true);
  EXPECT_TRUE(c3.holds);
  EXPECT_EQ(c3.margin, 137268);
}

TEST(ConditionI, SmallOrderOrIrregularFails) {
  EXPECT_FALSE(check_condition_I(raw(2, 7, 21121, 300), true).holds);
  EXPECT_FALSE(check_condition_I(raw(2, 7, 21121, 10560), false).holds);
  EXPECT_FALSE(check_condition_I(raw(3, 4, 2593, 648), false).holds);
}

TEST(ConditionII, Bounds) {
  EXPECT_EQ(check_condition_II(raw(2, 7, 21121, 10560)).bound, 260);
  EXPECT_EQ(check_condition_II(raw(5, 3, 20602801, 10301400)).bound, 1004);
  const ConditionII c3 = check_condition_II(raw(3, 4, 2593, 648));
  EXPECT_EQ(c3.bound, 328);
  EXPECT_NE(c3.bound, 112);
  EXPECT_TRUE(c3.holds);
  EXPECT_EQ(c3.margin, 2593 - 328);
}

TEST(GlOrder, Examples) {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) EXPECT_EQ(gl_order(1, p), p - 1);
  EXPECT_EQ(gl_order(2, 2), 6);
  EXPECT_EQ(gl_order(3, 2), 168);
  EXPECT_THROW(gl_order(0, 2), std::invalid_argument);
}

TEST(GlOrder, DividedByEachCyclicFactor) {
  for (unsigned long p : {2ul, 3ul, 5ul})
    for (unsigned long l = 1; l <= 6; ++l) {
      const BigInt g = gl_order(l, p);
      for (unsigned long i = 1; i <= l; ++i) ASSERT_EQ(g % (big_pow(BigInt(p), i) - 1), 0) << p << " " << l << " " << i;
    }
}

TEST(MinRank, Examples) {
  EXPECT_EQ(min_rank_l(2, BigInt(7)), 3u);
  EXPECT_EQ(min_rank_l(2, BigInt(3)), 2u);
  EXPECT_EQ(min_rank_l(3, BigInt(2)), 1u);
  EXPECT_THROW(min_rank_l(3, BigInt(3)), std::invalid_argument);
}

TEST(MinRank, EqualsOrderOnGrid) {
  // Least l with h | |GL_l(F_p)| by direct (unreduced) products.
  for (unsigned long p = 2; p < 50; ++p) {
    if (!oracle::prime_by_trial(std::uint64_t{p})) continue;
    for (unsigned long h = 2; h < 500; ++h) {
      if (h == p || !oracle::prime_by_trial(std::uint64_t{h})) continue;
      const std::uint64_t l = min_rank_l(p, BigInt(h));
      ASSERT_EQ(l, oracle::order_by_scan(p % h, h)) << p << " " << h;
      if (l <= 12) {
        ASSERT_EQ(gl_order(l, p) % h, 0);
        if (l > 1) {
          ASSERT_NE(gl_order(l - 1, p) % h, 0);
        }
      }
    }
  }
}

TEST(Signature, TableCases) {
  const auto s2 = signature_of_L(raw(2, 7, 21121, 10560));
  EXPECT_EQ(s2.r1, 0);
  EXPECT_EQ(s2.r2, 1351744);
  EXPECT_EQ(signature_of_L(raw(3, 4, 2593, 648)).r2, 210033);
  EXPECT_EQ(signature_of_L(raw(5, 3, 20602801, 10301400)).r2, BigInt("5150700250"));
  EXPECT_THROW(signature_of_L(raw(2, 1, 3, 2)), std::invalid_argument);
}

TEST(Signature, DegreeIdentity) {
  const std::vector<std::tuple<unsigned long, unsigned, long>> cases{
      {2, 7, 21121}, {3, 4, 2593}, {5, 3, 20602801}, {3, 2, 7}, {2, 3, 5}, {7, 1, 11}};
  for (auto [p, m, h] : cases) {
    const TowerCandidate c = raw(p, m, h, 1);
    const Signature s = signature_of_L(c);
    EXPECT_EQ(s.r1 + 2 * s.r2, BigInt(p) * c.h * c.phi_pm);
  }
}

TEST(GolodSafarevic, Examples) {
  EXPECT_TRUE(gs_forces_infinite(BigInt(6), BigInt(1), BigInt(1)));
  EXPECT_FALSE(gs_forces_infinite(BigInt(4), BigInt(1), BigInt(1)));
  EXPECT_TRUE(gs_forces_infinite(BigInt(21121), BigInt(0), BigInt(1351744)));
  EXPECT_GT(gs_margin(BigInt(21121), BigInt(0), BigInt(1351744)), 0);
  // Equality counts: 6^2/4 - 6 = 3.
  EXPECT_TRUE(gs_forces_infinite(BigInt(6), BigInt(0), BigInt(3)));
  EXPECT_FALSE(gs_forces_infinite(BigInt(6), BigInt(0), BigInt(4)));
  EXPECT_THROW(gs_forces_infinite(BigInt(-1), BigInt(0), BigInt(0)), std::invalid_argument);
  EXPECT_EQ((GsData{BigInt(5), BigInt(0), BigInt(0)}.h2_lower()), BigRational(25, 4));
}

TEST(GolodSafarevic, Monotone) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const BigInt h1(static_cast<unsigned long>(rng() % 2000));
    const BigInt r1(static_cast<unsigned long>(rng() % 50000)), r2(static_cast<unsigned long>(rng() % 50000));
    const BigInt dh(static_cast<unsigned long>(rng() % 100)), dr(static_cast<unsigned long>(rng() % 1000));
    const bool base = gs_forces_infinite(h1, r1, r2);
    if (base) {
      ASSERT_TRUE(gs_forces_infinite(h1 + dh, r1, r2));
    } else {
      ASSERT_FALSE(gs_forces_infinite(h1, r1 + dr, r2));
      ASSERT_FALSE(gs_forces_infinite(h1, r1, r2 + dr));
    }
    // Brute check of the inequality with integers only: h1^2 - 4 h1 >= 4 (r1 + r2).
    ASSERT_EQ(base, h1 * h1 - 4 * h1 >= 4 * (r1 + r2));
  }
}

TEST(ConditionI, Monotone) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 2000; ++t) {
    const unsigned long p = std::vector<unsigned long>{2, 3, 5, 7}[rng() % 4];
    const unsigned m = 1 + static_cast<unsigned>(rng() % 4);
    const long h = 3 + static_cast<long>(rng() % 5000);
    const long f = 1 + static_cast<long>(rng() % 2000);
    const bool base = check_condition_I(raw(p, m, h, f), true).holds;
    if (base) {
      ASSERT_TRUE(check_condition_I(raw(p, m, h, f + 1 + static_cast<long>(rng() % 50)), true).holds);
    } else {
      ASSERT_FALSE(check_condition_I(raw(p, m, h + 1 + static_cast<long>(rng() % 100), f), true).holds);
      ASSERT_FALSE(check_condition_I(raw(p, m + 1, h, f), true).holds);
    }
  }
}

TEST(Candidate, Validation) {
  const FactoredInteger hm = factorize(BigInt(359057));
  const TowerCandidate c = make_candidate(2, 7, BigInt(21121), hm);
  EXPECT_EQ(c.f, 10560);
  EXPECT_EQ(c.phi_pm, 64);
  EXPECT_THROW(make_candidate(2, 7, BigInt(359057), hm), std::invalid_argument);  // composite
  EXPECT_THROW(make_candidate(2, 7, BigInt(19), hm), std::invalid_argument);      // does not divide
  EXPECT_THROW(make_candidate(4, 7, BigInt(17), hm), std::invalid_argument);
  EXPECT_THROW(make_candidate(2, 0, BigInt(17), hm), std::invalid_argument);
}

TEST(Verify, TableCasesBothPass) {
  const CriterionReport r2 = verify_candidate(make_candidate(2, 7, BigInt(21121), relative_class_number(2, 7).value));
  EXPECT_EQ(r2.conclusion, Conclusion::BothBranchesPass);
  EXPECT_TRUE(r2.regular_p);
  const CriterionReport r5 =
      verify_candidate(make_candidate(5, 3, BigInt(20602801), relative_class_number(5, 3).value));
  EXPECT_EQ(r5.conclusion, Conclusion::BothBranchesPass);
  EXPECT_EQ(r5.candidate.f, 10301400);
  const CriterionReport r3 = verify_candidate(make_candidate(3, 4, BigInt(2593), relative_class_number(3, 4).value));
  EXPECT_EQ(r3.conclusion, Conclusion::BothBranchesPass);
}

TEST(Verify, SyntheticFail) {
  const TowerCandidate c = make_candidate(2, 1, BigInt(3), factorize(BigInt(3)));
  EXPECT_EQ(c.f, 2);
  const CriterionReport r = verify_candidate(c);
  EXPECT_FALSE(r.cond_I.holds);
  EXPECT_FALSE(r.cond_II.holds);
  EXPECT_EQ(r.cond_II.bound, 8);
  EXPECT_EQ(r.conclusion, Conclusion::Fail);
}

TEST(Verify, SmallFactorOfTableFieldIsFail) {
  const CriterionReport r = verify_candidate(make_candidate(2, 7, BigInt(17), relative_class_number(2, 7).value));
  EXPECT_EQ(r.candidate.f, 8);
  EXPECT_EQ(r.conclusion, Conclusion::Fail);
}

TEST(Conclusion, Consistency) {
  EXPECT_EQ(conclude(true, true), Conclusion::BothBranchesPass);
  EXPECT_EQ(conclude(true, false), Conclusion::OnlyI);
  EXPECT_EQ(conclude(false, true), Conclusion::OnlyII);
  EXPECT_EQ(conclude(false, false), Conclusion::Fail);
  EXPECT_STREQ(to_string(Conclusion::BothBranchesPass), "both-branches-pass");
  EXPECT_STREQ(to_string(Conclusion::OnlyII), "only-II");
}
