#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/bigint.hpp"

namespace towerforge {

/// A positive integer together with its complete prime factorization.
/// Factors are kept sorted by prime with positive exponents.
struct FactoredInteger {
  BigInt value{1};
  std::vector<std::pair<BigInt, unsigned>> factors;

  BigInt recompose() const {
    BigInt r{1};
    for (const auto& [q, e] : factors) r *= big_pow(q, e);
    return r;
  }

  bool is_one() const { return factors.empty(); }

  const BigInt& largest_prime() const {
    if (factors.empty()) throw std::logic_error("1 has no prime factors");
    return factors.back().first;
  }

  bool divisible_by(const BigInt& q) const {
    return std::any_of(factors.begin(), factors.end(), [&](const auto& f) { return f.first == q; });
  }

  /// "17 * 21121", "2^6 * 5^6", or "1".
  std::string to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) os << " * ";
      os << factors[i].first.get_str();
      if (factors[i].second > 1) os << '^' << factors[i].second;
    }
    return os.str();
  }

  friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
    return a.value == b.value && a.factors == b.factors;
  }
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1u << 16;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned s, unsigned long base) {
  BigInt a{base};
  BigInt x = powmod(a, d, n);
  const BigInt n1 = n - 1;
  if (x == 1 || x == n1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

inline void add_factor(std::vector<std::pair<BigInt, unsigned>>& fs, const BigInt& q, unsigned e) {
  for (auto& f : fs) {
    if (f.first == q) {
      f.second += e;
      return;
    }
  }
  fs.emplace_back(q, e);
}

}  // namespace detail

/// Largest n for which the fixed Miller-Rabin base set {2,...,41} is a proof.
inline const BigInt& certified_primality_bound() {
  static const BigInt bound{"3317044064679887385961981"};
  return bound;
}

/// Effort limits for factorize(). The default comfortably covers every
/// integer below ~10^30 with no factor above ~10^12.
struct FactorBudget {
  std::uint64_t rho_iterations = 4'000'000;
};

/// Result of a factorization attempt that may stop early: `unfactored` is
/// the composite (or uncertified) cofactor still left, 1 when complete.
struct PartialFactorization {
  std::vector<std::pair<BigInt, unsigned>> factors;
  BigInt unfactored{1};

  bool complete() const { return unfactored == 1; }
};

inline PartialFactorization factorize_partial(const BigInt& n, FactorBudget budget = {});

namespace detail {

// Pocklington: if n - 1 = F * R with every prime q | F witnessed by some a
// (a^{n-1} = 1, gcd(a^{(n-1)/q} - 1, n) = 1) and F^2 > n, then n is prime.
inline bool pocklington_certifies(const BigInt& n, FactorBudget budget) {
  const BigInt nm1 = n - 1;
  const PartialFactorization pf = factorize_partial(nm1, budget);
  BigInt F(1);
  for (const auto& [q, e] : pf.factors) F *= big_pow(q, e);
  if (F * F <= n) return false;
  for (const auto& [q, e] : pf.factors) {
    bool witnessed = false;
    for (unsigned long a = 2; a < 200 && !witnessed; ++a) {
      if (powmod(BigInt(a), nm1, n) != 1) return false;
      witnessed = gcd(powmod(BigInt(a), BigInt(nm1 / q), n) - 1, n) == 1;
    }
    if (!witnessed) return false;
  }
  return true;
}

}  // namespace detail

/// Primality proof. Below the certified bound the fixed Miller-Rabin bases
/// decide; above it a Pocklington certificate is built from a partial
/// factorization of n - 1. Throws BudgetExceeded when no certificate is
/// found within the budget.
inline bool is_prime(const BigInt& n, FactorBudget budget = {}) {
  if (n < 2) return false;
  for (std::uint32_t q : detail::small_primes()) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
    if (BigInt{q} * q > n) return true;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (unsigned long base : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
    if (!detail::miller_rabin_round(n, d, s, base)) return false;
  }
  if (n < certified_primality_bound()) return true;
  if (detail::pocklington_certifies(n, budget)) return true;
  throw BudgetExceeded("primality of " + n.get_str() + " could not be certified within budget");
}

inline bool is_prime_power(const BigInt& q, BigInt* base = nullptr) {
  if (q < 2) return false;
  for (unsigned long k = mpz_sizeinbase(q.get_mpz_t(), 2); k >= 1; --k) {
    BigInt r;
    if (mpz_root(r.get_mpz_t(), q.get_mpz_t(), k) != 0 && is_prime(r)) {
      if (base) *base = r;
      return true;
    }
  }
  return false;
}

namespace detail {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
inline BigInt pollard_brent(const BigInt& n, unsigned long c, std::uint64_t& budget) {
  BigInt y{2}, x, ys, q{1}, g{1};
  const unsigned long m = 128;
  std::uint64_t r = 1;
  auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    do {
      ys = y;
      std::uint64_t lim = std::min<std::uint64_t>(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = f(y);
        BigInt diff = x - y;
        q = q * abs(diff) % n;
      }
      g = gcd(q, n);
      k += lim;
      if (budget <= lim) return BigInt{0};
      budget -= lim;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      ys = f(ys);
      BigInt diff = x - ys;
      g = gcd(abs(diff), n);
    } while (g == 1);
  }
  return g == n ? BigInt{0} : g;
}

inline void split_cofactor(const BigInt& n, unsigned mult, PartialFactorization& out, std::uint64_t& budget) {
  if (n == 1) return;
  bool prime = false;
  try {
    prime = is_prime(n, FactorBudget{budget});
  } catch (const BudgetExceeded&) {
    // No certificate: rho may still split it, otherwise it stays unfactored.
    prime = false;
  }
  if (prime) {
    add_factor(out.factors, n, mult);
    return;
  }
  BigInt root;
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = mpz_sizeinbase(n.get_mpz_t(), 2); k >= 2; --k) {
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        split_cofactor(root, mult * static_cast<unsigned>(k), out, budget);
        return;
      }
    }
  }
  for (unsigned long c = 1; c < 64 && budget > 0; ++c) {
    BigInt d = pollard_brent(n, c, budget);
    if (d != 0) {
      BigInt rest = n / d;
      // Pull out the common part so each piece is handled once.
      split_cofactor(d, mult, out, budget);
      split_cofactor(rest, mult, out, budget);
      return;
    }
  }
  out.unfactored *= big_pow(n, mult);
}

}  // namespace detail

/// Trial division by primes below 2^16, then Pollard-Brent rho on the
/// survivors. Primes in the result are all certified by is_prime().
inline PartialFactorization factorize_partial(const BigInt& n, FactorBudget budget) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive, got " + n.get_str());
  PartialFactorization out;
  BigInt rest = n;
  for (std::uint32_t q : detail::small_primes()) {
    if (BigInt{q} * q > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
      ++e;
    }
    if (e) out.factors.emplace_back(BigInt{q}, e);
  }
  std::uint64_t iterations = budget.rho_iterations;
  detail::split_cofactor(rest, 1, out, iterations);
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

/// Complete factorization; throws BudgetExceeded if the budget runs out.
inline FactoredInteger factorize(const BigInt& n, FactorBudget budget = {}) {
  PartialFactorization pf = factorize_partial(n, budget);
  if (!pf.complete())
    throw BudgetExceeded("factorization of " + n.get_str() + " left cofactor " + pf.unfactored.get_str());
  return FactoredInteger{n, std::move(pf.factors)};
}

inline BigInt euler_phi(const FactoredInteger& n) {
  BigInt r{1};
  for (const auto& [q, e] : n.factors) r *= big_pow(q, e - 1) * (q - 1);
  return r;
}

inline BigInt euler_phi(const BigInt& n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  return euler_phi(factorize(n));
}

inline std::uint64_t euler_phi(std::uint64_t n) { return to_u64(euler_phi(from_u64(n))); }

/// Factorization of phi(n) assembled from the factorization of n.
inline FactoredInteger phi_factorization(const FactoredInteger& n, FactorBudget budget = {}) {
  std::vector<std::pair<BigInt, unsigned>> fs;
  for (const auto& [q, e] : n.factors) {
    if (e > 1) detail::add_factor(fs, q, e - 1);
    for (const auto& [r, k] : factorize(q - 1, budget).factors) detail::add_factor(fs, r, k);
  }
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  FactoredInteger out{BigInt{1}, std::move(fs)};
  out.value = out.recompose();
  return out;
}

/// Least k >= 1 with a^k = 1 (mod n). Starts from phi(n) and strips prime
/// factors while the congruence survives.
inline BigInt mult_order(const BigInt& a, const BigInt& n, FactorBudget budget = {}) {
  if (n < 2) throw std::invalid_argument("mult_order: modulus must be >= 2, got " + n.get_str());
  const BigInt base = mod_floor(a, n);
  if (gcd(base, n) != 1)
    throw std::invalid_argument("mult_order: gcd(" + a.get_str() + ", " + n.get_str() + ") != 1");
  const FactoredInteger phi = phi_factorization(factorize(n, budget), budget);
  BigInt order = phi.value;
  for (const auto& [q, e] : phi.factors) {
    for (unsigned i = 0; i < e; ++i) {
      BigInt trial = order / q;
      if (powmod(base, trial, n) != 1) break;
      order = trial;
    }
  }
  return order;
}

inline std::uint64_t mult_order(std::uint64_t a, std::uint64_t n) {
  return to_u64(mult_order(from_u64(a), from_u64(n)));
}

}  // namespace towerforge
