#pragma once

// Brute-force reference implementations used only by the tests. None of
// these share code paths with the routines they check.

#include <cstdint>
#include <numeric>
#include <vector>

#include "towerforge/bigint.hpp"
#include "towerforge/cyclo.hpp"
#include "towerforge/polynomial.hpp"

namespace oracle {

using towerforge::BigInt;
using towerforge::BigRational;

inline std::uint64_t phi_by_gcd(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= n; ++a)
    if (std::gcd(a, n) == 1) ++c;
  return c;
}

inline std::uint64_t order_by_scan(std::uint64_t a, std::uint64_t n) {
  std::uint64_t x = a % n, k = 1;
  while (x != 1 % n) {
    x = x * a % n;
    ++k;
  }
  return k;
}

inline bool prime_by_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool prime_by_trial(const BigInt& n) {
  if (n < 2) return false;
  for (BigInt d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Bernoulli numbers (B_1 = +1/2 convention) by the Akiyama-Tanigawa
/// triangle; the sign of B_1 is flipped to match the library.
inline std::vector<BigRational> bernoulli_akiyama_tanigawa(unsigned n) {
  std::vector<BigRational> out(n + 1), a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = BigRational(BigInt(1), BigInt(m + 1));
    for (unsigned j = m; j >= 1; --j) {
      a[j - 1] = BigRational(BigInt(j)) * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out[m] = a[0];
  }
  if (n >= 1) out[1] = -out[1];
  return out;
}

/// Integer polynomial residue in Z[zeta_n], exact.
struct ZetaPoly {
  unsigned long n;
  towerforge::IntPoly poly;

  ZetaPoly operator*(const ZetaPoly& o) const { return {n, (poly * o.poly) % towerforge::cyclo_poly(n)}; }
  ZetaPoly operator+(const ZetaPoly& o) const { return {n, (poly + o.poly) % towerforge::cyclo_poly(n)}; }
  ZetaPoly operator-(const ZetaPoly& o) const { return {n, (poly - o.poly) % towerforge::cyclo_poly(n)}; }
};

/// v_pi(y) for y in Z[zeta_{p^m}], via v_p of its absolute norm (the prime
/// above p is totally ramified of residue degree 1). Returns `cap` for y = 0.
inline std::uint64_t pi_valuation_by_norm(const ZetaPoly& y, unsigned long p, std::uint64_t cap) {
  if (y.poly.is_zero()) return cap;
  towerforge::RatPoly r = towerforge::to_rational(y.poly);
  BigRational nrm = towerforge::resultant(towerforge::to_rational(towerforge::cyclo_poly(y.n)), r);
  BigInt num = abs(nrm.get_num());
  std::uint64_t v = 0;
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  return v;
}

/// kappa by exhaustive search in exact arithmetic: the largest l <= lmax
/// with gamma^p - x divisible by pi^l for some gamma = sum_{j<l} d_j pi^j.
inline std::uint64_t kappa_exact(unsigned long p, unsigned m, const std::vector<BigInt>& x_zeta, std::uint64_t lmax) {
  const unsigned long n = towerforge::to_u64(towerforge::big_pow(BigInt(p), m));
  const ZetaPoly x{n, towerforge::IntPoly(x_zeta) % towerforge::cyclo_poly(n)};
  const ZetaPoly one{n, towerforge::IntPoly{BigInt(1)}};
  const ZetaPoly pi{n, towerforge::IntPoly{BigInt(1), BigInt(-1)} % towerforge::cyclo_poly(n)};
  std::vector<ZetaPoly> pi_pow{one};
  for (std::uint64_t j = 1; j < lmax; ++j) pi_pow.push_back(pi_pow.back() * pi);
  std::uint64_t best = 0;
  for (std::uint64_t l = 1; l <= lmax; ++l) {
    std::vector<unsigned long> d(l, 0);
    bool found = false;
    for (;;) {
      ZetaPoly g{n, {}};
      for (std::uint64_t j = 0; j < l; ++j)
        if (d[j]) g = g + ZetaPoly{n, towerforge::IntPoly{BigInt(d[j])}} * pi_pow[j];
      ZetaPoly gp = one;
      for (unsigned long k = 0; k < p; ++k) gp = gp * g;
      if (pi_valuation_by_norm(gp - x, p, lmax + 1) >= l) {
        found = true;
        break;
      }
      std::size_t i = 0;
      while (i < l && ++d[i] == p) d[i++] = 0;
      if (i == l) break;
    }
    if (!found) break;
    best = l;
  }
  return best;
}

}  // namespace oracle
