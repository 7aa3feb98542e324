#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "towerforge/cyclo.hpp"
#include "towerforge/numtheory.hpp"
#include "towerforge/polynomial.hpp"

using namespace towerforge;

TEST(EulerPhi, Examples) {
  EXPECT_EQ(euler_phi(std::uint64_t{128}), 64u);
  EXPECT_EQ(euler_phi(std::uint64_t{1}), 1u);
  EXPECT_EQ(euler_phi(std::uint64_t{81}), 54u);
}

TEST(EulerPhi, MatchesGcdCountingUpTo10k) {
  for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_EQ(euler_phi(n), oracle::phi_by_gcd(n)) << "n = " << n;
}

TEST(MultOrder, TableValues) {
  EXPECT_EQ(mult_order(BigInt(2), BigInt(21121)), 10560);
  EXPECT_EQ(mult_order(BigInt(3), BigInt(2593)), 648);
  EXPECT_EQ(mult_order(BigInt(1), BigInt(97)), 1);
}

TEST(MultOrder, FiveModuloTwentyMillionPrime) {
  const BigInt f = mult_order(BigInt(5), BigInt(20602801));
  EXPECT_EQ(f, 10301400);
  EXPECT_NE(f, 103011400);
  // Independent confirmation: f | 20602800, 5^f = 1 and no maximal proper divisor works.
  EXPECT_EQ(BigInt(20602800) % f, 0);
  EXPECT_EQ(powmod(BigInt(5), f, BigInt(20602801)), 1);
  for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 109ul, 151ul}) {
    if (f % q == 0) {
      EXPECT_NE(powmod(BigInt(5), BigInt(f / q), BigInt(20602801)), 1) << q;
    }
  }
}

TEST(MultOrder, RejectsNonCoprime) {
  EXPECT_THROW(mult_order(BigInt(6), BigInt(9)), std::invalid_argument);
  EXPECT_THROW(mult_order(BigInt(3), BigInt(1)), std::invalid_argument);
}

TEST(MultOrder, MatchesScanUpTo10k) {
  std::mt19937_64 rng(7);
  for (std::uint64_t n = 2; n <= 10000; ++n) {
    for (int t = 0; t < 3; ++t) {
      std::uint64_t a = rng() % n;
      if (std::gcd(a, n) != 1) continue;
      ASSERT_EQ(mult_order(a, n), oracle::order_by_scan(a, n)) << a << " mod " << n;
    }
  }
}

TEST(Factorize, Examples) {
  FactoredInteger f = factorize(BigInt(359057));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, 17);
  EXPECT_EQ(f.factors[1].first, 21121);
  EXPECT_EQ(f.to_string(), "17 * 21121");

  EXPECT_TRUE(factorize(BigInt(1)).is_one());

  EXPECT_EQ(BigInt(2801) * BigInt(20602801), BigInt("57708445601"));
  FactoredInteger g = factorize(BigInt("57708445601"));
  EXPECT_EQ(g.to_string(), "2801 * 20602801");
}

TEST(Factorize, RecomposesWithCertifiedPrimes) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t n = 1 + rng() % 1'000'000'000'000ull;
    FactoredInteger f = factorize(from_u64(n));
    ASSERT_EQ(f.recompose(), from_u64(n));
    for (const auto& [q, e] : f.factors) {
      ASSERT_GE(e, 1u);
      ASSERT_TRUE(oracle::prime_by_trial(to_u64(q))) << q;
    }
  }
}

TEST(Factorize, LargeSemiprimeNeedsRho) {
  // 1000003 * 1000033 * 998244353
  const BigInt n = BigInt(1000003) * BigInt(1000033) * BigInt(998244353);
  FactoredInteger f = factorize(n);
  EXPECT_EQ(f.to_string(), "1000003 * 1000033 * 998244353");
  EXPECT_EQ(f.recompose(), n);
  EXPECT_EQ(factorize(BigInt(1) << 40).to_string(), "2^40");
}

TEST(Factorize, BudgetExhaustionIsReported) {
  // Product of two ~40-bit primes with a starved rho budget.
  const BigInt n = BigInt("1099511627791") * BigInt("1099511628401");
  EXPECT_THROW(factorize(n, FactorBudget{10}), BudgetExceeded);
  PartialFactorization pf = factorize_partial(n, FactorBudget{10});
  EXPECT_FALSE(pf.complete());
  EXPECT_EQ(factorize(n).recompose(), n);
}

TEST(Primality, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(from_u64(n)), oracle::prime_by_trial(n)) << n;
  EXPECT_TRUE(is_prime(BigInt("1000000007")));
  EXPECT_FALSE(is_prime(BigInt("3215031751")));  // strong pseudoprime to bases 2,3,5,7
  // Above the Miller-Rabin bound, composites are still caught by a base.
  EXPECT_FALSE(is_prime(BigInt("30000000000241000000000481")));
  EXPECT_EQ(factorize(BigInt("30000000000241000000000481")).to_string(), "3000000000013 * 10000000000037");
}

TEST(Primality, CertificateAboveMillerRabinBound) {
  // n - 1 = 2 * 83 * 22107011 * 1396054413416693.
  const BigInt n("5123189985484229035947419");
  ASSERT_GT(n, certified_primality_bound());
  EXPECT_EQ(BigInt(2) * 83 * 22107011 * BigInt("1396054413416693"), n - 1);
  EXPECT_TRUE(oracle::prime_by_trial(std::uint64_t{22107011}));
  EXPECT_TRUE(oracle::prime_by_trial(std::uint64_t{1396054413416693}));
  EXPECT_TRUE(is_prime(n));
  // Without rho only 2 * 83 of n - 1 is found, far below sqrt(n).
  EXPECT_THROW(is_prime(n, FactorBudget{0}), BudgetExceeded);
  EXPECT_EQ(factorize(BigInt(11) * 499 * n).to_string(), "11 * 499 * 5123189985484229035947419");
}

TEST(CycloPoly, Examples) {
  EXPECT_EQ(cyclo_poly(4), (IntPoly{BigInt(1), BigInt(0), BigInt(1)}));
  EXPECT_EQ(cyclo_poly(1), (IntPoly{BigInt(-1), BigInt(1)}));
  // Phi_9 * Phi_3 * Phi_1 = x^9 - 1 with Phi_3 = x^2 + x + 1.
  const IntPoly phi9{BigInt(1), BigInt(0), BigInt(0), BigInt(1), BigInt(0), BigInt(0), BigInt(1)};
  const IntPoly lhs = phi9 * IntPoly{BigInt(1), BigInt(1), BigInt(1)} * IntPoly{BigInt(-1), BigInt(1)};
  EXPECT_EQ(lhs, IntPoly::monomial(9) - IntPoly{BigInt(1)});
  EXPECT_EQ(cyclo_poly(9), phi9);
}

TEST(CycloPoly, DivisorDegreesSumToN) {
  for (unsigned long n = 1; n <= 500; ++n) {
    long total = 0;
    for (unsigned long d = 1; d <= n; ++d)
      if (n % d == 0) total += cyclo_poly(d).degree();
    ASSERT_EQ(total, static_cast<long>(n));
    ASSERT_EQ(cyclo_poly(n).degree(), static_cast<long>(oracle::phi_by_gcd(n)));
  }
}

TEST(CycloNorm, Examples) {
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul}) {
    CycloElement one_minus_zeta = CycloElement::constant(p, BigRational(1)) - CycloElement::zeta_power(p, 1);
    EXPECT_EQ(cyclo_norm(one_minus_zeta), BigRational(BigInt(p))) << p;
  }
  EXPECT_EQ(cyclo_norm(CycloElement::constant(12, BigRational(3, 2))), big_pow(BigRational(3, 2), 4));
  EXPECT_EQ(cyclo_norm(CycloElement::zeta_power(4, 1)), BigRational(1));
}

TEST(CycloNorm, IsMultiplicative) {
  std::mt19937_64 rng(3);
  auto random_elem = [&](unsigned long n) {
    std::vector<BigRational> c;
    for (std::size_t i = 0; i < 8; ++i) c.emplace_back(BigInt(static_cast<long>(rng() % 11) - 5), BigInt(1 + rng() % 3));
    return CycloElement(n, RatPoly(c));
  };
  for (unsigned long n : {5ul, 7ul, 8ul, 9ul, 12ul, 15ul}) {
    for (int t = 0; t < 10; ++t) {
      CycloElement a = random_elem(n), b = random_elem(n);
      ASSERT_EQ(cyclo_norm(a * b), cyclo_norm(a) * cyclo_norm(b)) << "n = " << n;
    }
  }
}

TEST(CycloElement, InverseAndDegree) {
  CycloElement a = CycloElement::constant(9, BigRational(2)) + CycloElement::zeta_power(9, 4);
  EXPECT_EQ(a.degree(), 6u);
  CycloElement prod = a * a.inverse();
  EXPECT_TRUE(prod.is_rational());
  EXPECT_EQ(prod.rational_value(), 1);
  EXPECT_EQ(CycloElement::zeta_power(7, 7), CycloElement::constant(7, BigRational(1)));
  EXPECT_THROW(CycloElement(7).inverse(), std::domain_error);
}

TEST(Resultant, SwapSignAndKnownValue) {
  // Res(x^2 - 2, x - 1) = (sqrt2 - 1)(-sqrt2 - 1) = -1; swapping costs (-1)^(2*1).
  RatPoly f{BigRational(-2), BigRational(0), BigRational(1)};
  RatPoly g{BigRational(-1), BigRational(1)};
  EXPECT_EQ(resultant(f, g), BigRational(-1));
  EXPECT_EQ(resultant(g, f), BigRational(-1));
  EXPECT_EQ(resultant(f, RatPoly{}), BigRational(0));
}
