#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "towerforge/bigint.hpp"
#include "towerforge/numtheory.hpp"
#include "towerforge/polynomial.hpp"

namespace towerforge {

class InsufficientPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroElement : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Cofactor handed to check_prop23_invariance is not a p-th power unit.
class CofactorPrecondition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Z_p[zeta_{p^m}] / (p^N), presented in the power basis of pi = 1 - zeta.
/// pi satisfies the Eisenstein polynomial Phi_{p^m}(1 - pi) of degree
/// e = phi(p^m); the ring is totally ramified with uniformizer pi.
class LocalRing {
 public:
  LocalRing(unsigned long p, unsigned m, unsigned precision) : p_(p), m_(m), N_(precision) {
    if (!is_prime(BigInt(p))) throw std::invalid_argument("LocalRing: p must be prime");
    if (m == 0 || precision == 0) throw std::invalid_argument("LocalRing: m and precision must be positive");
    BigInt mod = big_pow(BigInt(p), precision);
    if (mpz_sizeinbase(mod.get_mpz_t(), 2) > 62) throw std::invalid_argument("LocalRing: p^N must stay below 2^62");
    mod_ = to_u64(mod);
    const std::uint64_t pm1 = to_u64(big_pow(BigInt(p), m - 1));
    e_ = static_cast<std::size_t>(pm1 * (p - 1));

    // E(pi) = Phi_{p^m}(1 - pi) = sum_{k<p} (1 - pi)^{k p^{m-1}}, made monic.
    std::vector<BigInt> E(e_ + 1, BigInt(0));
    for (unsigned long k = 0; k < p; ++k) {
      const unsigned long deg = k * pm1;
      BigInt binom(1);
      for (unsigned long j = 0; j <= deg; ++j) {
        E[j] += (j % 2 ? -binom : binom);
        binom = binom * (deg - j) / (j + 1);
      }
    }
    if (E[e_] < 0)
      for (auto& v : E) v = -v;
    // pi^e = sum_j red_j pi^j,  red_j = -E_j.  All red_j are divisible by p
    // and pi^e = p * eps with eps = sum_j (red_j / p) pi^j a unit.
    red_.resize(e_);
    eps_.resize(e_);
    const BigInt bp(p), bmod(mod);
    for (std::size_t j = 0; j < e_; ++j) {
      BigInt r = -E[j];
      red_[j] = to_u64(mod_floor(r, bmod));
      eps_[j] = to_u64(mod_floor(BigInt(r / bp), bmod));
    }
  }

  static std::shared_ptr<const LocalRing> make(unsigned long p, unsigned m, unsigned precision) {
    return std::make_shared<const LocalRing>(p, m, precision);
  }

  unsigned long p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned precision() const { return N_; }
  std::size_t ramification() const { return e_; }
  std::uint64_t modulus() const { return mod_; }
  /// pi-adic level below which every element is known exactly: e * N.
  std::uint64_t level_cap() const { return static_cast<std::uint64_t>(e_) * N_; }
  const std::vector<std::uint64_t>& reduction() const { return red_; }
  const std::vector<std::uint64_t>& eps() const { return eps_; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod_);
  }

 private:
  unsigned long p_;
  unsigned m_;
  unsigned N_;
  std::uint64_t mod_ = 0;
  std::size_t e_ = 0;
  std::vector<std::uint64_t> red_, eps_;
};

/// pi-adic valuation, or at_cap when the element vanishes at the carried
/// precision (true valuation >= value).
struct PiValuation {
  std::uint64_t value = 0;
  bool at_cap = false;

  friend bool operator==(const PiValuation&, const PiValuation&) = default;
};

/// Truncated element of Z_p[zeta_{p^m}] with coefficients mod p^N.
class LocalCycloElement {
 public:
  LocalCycloElement(std::shared_ptr<const LocalRing> ring, std::vector<std::uint64_t> pi_coeffs)
      : ring_(std::move(ring)), c_(std::move(pi_coeffs)) {
    if (c_.size() != ring_->ramification()) throw std::invalid_argument("LocalCycloElement: wrong coefficient count");
    for (auto& v : c_) v %= ring_->modulus();
    val_ = compute_valuation();
  }

  static LocalCycloElement constant(std::shared_ptr<const LocalRing> ring, const BigInt& v) {
    std::vector<std::uint64_t> c(ring->ramification(), 0);
    c[0] = to_u64(mod_floor(v, from_u64(ring->modulus())));
    return LocalCycloElement(std::move(ring), std::move(c));
  }
  static LocalCycloElement one(std::shared_ptr<const LocalRing> ring) { return constant(std::move(ring), BigInt(1)); }

  static LocalCycloElement pi(std::shared_ptr<const LocalRing> ring) {
    std::vector<std::uint64_t> c(ring->ramification(), 0);
    if (c.size() == 1) {
      // e = 1 (p = 2, m = 1): pi = 1 - (-1) = 2.
      c[0] = ring->reduction()[0];
    } else {
      c[1] = 1;
    }
    return LocalCycloElement(std::move(ring), std::move(c));
  }

  /// Element sum_i coeffs[i] zeta^i; any length, reduced mod Phi_{p^m}.
  static LocalCycloElement from_zeta_coeffs(std::shared_ptr<const LocalRing> ring, const std::vector<BigInt>& coeffs) {
    const unsigned long n = to_u64(big_pow(BigInt(ring->p()), ring->m()));
    const IntPoly reduced = IntPoly(coeffs) % cyclo_poly(n);
    const std::size_t e = ring->ramification();
    const BigInt bmod = from_u64(ring->modulus());
    std::vector<BigInt> b(e, BigInt(0));
    // zeta^i = (1 - pi)^i.
    for (std::size_t i = 0; i < reduced.coeffs().size(); ++i) {
      const BigInt& a = reduced.coeffs()[i];
      if (a == 0) continue;
      BigInt binom(1);
      for (std::size_t j = 0; j <= i; ++j) {
        b[j] += (j % 2 ? -binom : binom) * a;
        binom = binom * (i - j) / (j + 1);
      }
    }
    std::vector<std::uint64_t> c(e);
    for (std::size_t j = 0; j < e; ++j) c[j] = to_u64(mod_floor(b[j], bmod));
    return LocalCycloElement(std::move(ring), std::move(c));
  }

  /// Inverse change of basis: coefficients of 1, zeta, ..., zeta^{e-1} mod p^N.
  std::vector<std::uint64_t> zeta_coeffs() const {
    const std::size_t e = c_.size();
    const BigInt bmod = from_u64(ring_->modulus());
    std::vector<BigInt> a(e, BigInt(0));
    if (e == 1) return {c_[0]};
    // pi^j = (1 - zeta)^j.
    for (std::size_t j = 0; j < e; ++j) {
      if (c_[j] == 0) continue;
      BigInt binom(1);
      for (std::size_t i = 0; i <= j; ++i) {
        a[i] += (i % 2 ? -binom : binom) * from_u64(c_[j]);
        binom = binom * (j - i) / (i + 1);
      }
    }
    std::vector<std::uint64_t> out(e);
    for (std::size_t i = 0; i < e; ++i) out[i] = to_u64(mod_floor(a[i], bmod));
    return out;
  }

  const LocalRing& ring() const { return *ring_; }
  std::shared_ptr<const LocalRing> ring_ptr() const { return ring_; }
  const std::vector<std::uint64_t>& pi_coeffs() const { return c_; }
  unsigned precision() const { return ring_->precision(); }

  /// Valuation with zero mapped to at_cap (value = e * N).
  PiValuation pi_valuation_capped() const { return val_; }

  bool is_zero() const { return val_.at_cap; }
  bool is_unit() const { return !val_.at_cap && val_.value == 0; }

  friend LocalCycloElement operator+(const LocalCycloElement& a, const LocalCycloElement& b) {
    auto [x, y] = align(a, b);
    const std::uint64_t mod = x.ring_->modulus();
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] = (x.c_[i] + y.c_[i]) % mod;
    return LocalCycloElement(x.ring_, std::move(x.c_));
  }
  friend LocalCycloElement operator-(const LocalCycloElement& a, const LocalCycloElement& b) {
    auto [x, y] = align(a, b);
    const std::uint64_t mod = x.ring_->modulus();
    for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] = (x.c_[i] + mod - y.c_[i]) % mod;
    return LocalCycloElement(x.ring_, std::move(x.c_));
  }
  friend LocalCycloElement operator*(const LocalCycloElement& a, const LocalCycloElement& b) {
    auto [x, y] = align(a, b);
    const LocalRing& R = *x.ring_;
    const std::size_t e = R.ramification();
    const std::uint64_t mod = R.modulus();
    std::vector<std::uint64_t> t(2 * e - 1, 0);
    for (std::size_t i = 0; i < e; ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < e; ++j) t[i + j] = (t[i + j] + R.mul(x.c_[i], y.c_[j])) % mod;
    }
    for (std::size_t i = t.size(); i-- > e;) {
      const std::uint64_t top = t[i];
      if (top == 0) continue;
      t[i] = 0;
      for (std::size_t j = 0; j < e; ++j) t[i - e + j] = (t[i - e + j] + R.mul(top, R.reduction()[j])) % mod;
    }
    t.resize(e);
    return LocalCycloElement(x.ring_, std::move(t));
  }
  friend bool operator==(const LocalCycloElement& a, const LocalCycloElement& b) {
    return a.ring_->precision() == b.ring_->precision() && a.ring_->p() == b.ring_->p() &&
           a.ring_->m() == b.ring_->m() && a.c_ == b.c_;
  }

  LocalCycloElement pow(std::uint64_t k) const {
    LocalCycloElement r = one(ring_), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      b = b * b;
      k >>= 1;
    }
    return r;
  }

  /// Inverse of a unit, by Newton iteration from the inverse of the
  /// constant term.
  LocalCycloElement inverse() const {
    if (!is_unit()) throw std::domain_error("LocalCycloElement::inverse: not a unit");
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), from_u64(c_[0]).get_mpz_t(), from_u64(ring_->modulus()).get_mpz_t());
    LocalCycloElement y = constant(ring_, inv);
    const LocalCycloElement two = constant(ring_, BigInt(2));
    const LocalCycloElement unit = one(ring_);
    for (int iter = 0; iter < 80; ++iter) {
      LocalCycloElement prod = *this * y;
      if (prod == unit) return y;
      y = y * (two - prod);
    }
    throw std::logic_error("LocalCycloElement::inverse did not converge");
  }

  /// x / pi^k for an element of valuation >= k. Writing k = qe + r, the
  /// result carries precision N - q - (r > 0).
  LocalCycloElement divide_by_pi_power(std::uint64_t k) const {
    if (k == 0) return *this;
    if (val_.at_cap || val_.value < k) throw std::domain_error("divide_by_pi_power: valuation too small");
    const std::size_t e = ring_->ramification();
    const std::uint64_t q = k / e, r = k % e;
    const std::uint64_t loss = q + (r > 0 ? 1 : 0);
    if (loss >= ring_->precision())
      throw InsufficientPrecision("divide_by_pi_power: precision " + std::to_string(ring_->precision()) +
                                  " cannot absorb pi^" + std::to_string(k));
    const BigInt bp(ring_->p());
    const BigInt pq = big_pow(bp, q);
    auto mid = LocalRing::make(ring_->p(), ring_->m(), ring_->precision() - static_cast<unsigned>(q));
    auto build = [&](const std::shared_ptr<const LocalRing>& target, const std::vector<BigInt>& v) {
      const BigInt tmod = from_u64(target->modulus());
      std::vector<std::uint64_t> c(e);
      for (std::size_t j = 0; j < e; ++j) c[j] = to_u64(mod_floor(v[j], tmod));
      return LocalCycloElement(target, std::move(c));
    };

    // Divide every coefficient by p^q (all are divisible since v >= qe).
    std::vector<BigInt> b(e);
    for (std::size_t j = 0; j < e; ++j) {
      b[j] = from_u64(c_[j]);
      if (!mpz_divisible_p(b[j].get_mpz_t(), pq.get_mpz_t()))
        throw std::logic_error("divide_by_pi_power: coefficient not divisible by p^q");
      b[j] /= pq;
    }

    // pi^{qe} = p^q eps^q, so x / pi^{qe} = (x / p^q) eps^{-q}.
    const LocalCycloElement y = build(mid, b) * LocalCycloElement(mid, mid->eps()).inverse().pow(q);
    if (r == 0) return y;

    // y / pi^r: terms below pi^r have coefficients divisible by p, and
    // p = eps^{-1} pi^e. Dividing by p costs one more digit.
    auto lower = LocalRing::make(ring_->p(), ring_->m(), mid->precision() - 1);
    std::vector<BigInt> high(e, BigInt(0)), low(e, BigInt(0));
    for (std::size_t j = 0; j < e; ++j) {
      BigInt v = from_u64(y.c_[j]);
      if (j >= r) {
        high[j - r] = v;
      } else {
        if (!mpz_divisible_p(v.get_mpz_t(), bp.get_mpz_t()))
          throw std::logic_error("divide_by_pi_power: low coefficient not divisible by p");
        low[e + j - r] = v / bp;
      }
    }
    const LocalCycloElement eps_inv = LocalCycloElement(lower, lower->eps()).inverse();
    return build(lower, high) + build(lower, low) * eps_inv;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c_[i]);
    }
    return s + "] (pi-basis, mod " + std::to_string(ring_->p()) + "^" + std::to_string(ring_->precision()) + ")";
  }

 private:
  static std::pair<LocalCycloElement, LocalCycloElement> align(const LocalCycloElement& a, const LocalCycloElement& b) {
    if (a.ring_->p() != b.ring_->p() || a.ring_->m() != b.ring_->m())
      throw std::invalid_argument("LocalCycloElement: mixing different local rings");
    if (a.ring_->precision() == b.ring_->precision()) return {a, b};
    return a.ring_->precision() < b.ring_->precision() ? std::pair{a, b.reduce_to(a.ring_)}
                                                       : std::pair{a.reduce_to(b.ring_), b};
  }

  LocalCycloElement reduce_to(std::shared_ptr<const LocalRing> lower) const {
    std::vector<std::uint64_t> c = c_;
    for (auto& v : c) v %= lower->modulus();
    return LocalCycloElement(std::move(lower), std::move(c));
  }

  PiValuation compute_valuation() const {
    const std::uint64_t e = ring_->ramification();
    const std::uint64_t p = ring_->p();
    std::optional<std::uint64_t> best;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      std::uint64_t v = c_[j];
      if (v == 0) continue;
      std::uint64_t vp = 0;
      while (v % p == 0) {
        v /= p;
        ++vp;
      }
      const std::uint64_t level = vp * e + j;
      if (!best || level < *best) best = level;
    }
    if (!best) return PiValuation{ring_->level_cap(), true};
    return PiValuation{*best, false};
  }

  std::shared_ptr<const LocalRing> ring_;
  std::vector<std::uint64_t> c_;
  PiValuation val_;
};

/// Exact pi-adic valuation; an element that is zero at the carried
/// precision is rejected.
inline std::uint64_t pi_valuation(const LocalCycloElement& x) {
  const PiValuation v = x.pi_valuation_capped();
  if (v.at_cap) throw ZeroElement("pi_valuation: element is zero at precision " + std::to_string(x.precision()));
  return v.value;
}

/// a = b mod pi^level.
inline bool congruent_mod_pi(const LocalCycloElement& a, const LocalCycloElement& b, std::uint64_t level) {
  const PiValuation v = (a - b).pi_valuation_capped();
  return v.at_cap || v.value >= level;
}

/// The largest level allowed for kappa at (p, m): the cap p^m of its
/// definition. Exhaustive search is restricted to p in {2,3}, m in {1,2}.
inline std::uint64_t kappa_cap(unsigned long p, unsigned m) {
  if (!((p == 2 || p == 3) && (m == 1 || m == 2)))
    throw BudgetExceeded("kappa: exhaustive search supports p in {2,3}, m in {1,2} only");
  return to_u64(big_pow(BigInt(p), m));
}

/// Largest l <= l_max such that gamma^p = x mod pi^l for some gamma,
/// found by enumerating every residue class gamma mod pi^l.
inline std::uint64_t kappa(const LocalCycloElement& x, std::uint64_t l_max) {
  const LocalRing& R = x.ring();
  const std::uint64_t cap = kappa_cap(R.p(), R.m());
  if (l_max == 0 || l_max > cap)
    throw std::invalid_argument("kappa: l_max must lie in [1, " + std::to_string(cap) + "]");
  if (!x.is_unit()) throw std::invalid_argument("kappa: input must be a unit");
  if (R.level_cap() < l_max + R.ramification())
    throw InsufficientPrecision("kappa: precision " + std::to_string(R.precision()) + " cannot resolve level " +
                                std::to_string(l_max) + " with margin e");

  const auto ring = x.ring_ptr();
  const std::uint64_t p = R.p();
  std::vector<LocalCycloElement> pi_pow;
  pi_pow.push_back(LocalCycloElement::one(ring));
  const LocalCycloElement pi = LocalCycloElement::pi(ring);
  for (std::uint64_t j = 1; j < l_max; ++j) pi_pow.push_back(pi_pow.back() * pi);

  std::uint64_t best = 0;
  for (std::uint64_t l = 1; l <= l_max; ++l) {
    std::vector<std::uint64_t> digits(l, 0);
    bool found = false;
    for (;;) {
      LocalCycloElement gamma = LocalCycloElement::constant(ring, BigInt(0));
      for (std::uint64_t j = 0; j < l; ++j)
        if (digits[j]) gamma = gamma + pi_pow[j] * LocalCycloElement::constant(ring, from_u64(digits[j]));
      if (congruent_mod_pi(gamma.pow(p), x, l)) {
        found = true;
        break;
      }
      std::size_t i = 0;
      while (i < l && ++digits[i] == p) digits[i++] = 0;
      if (i == l) break;
    }
    // Solvability mod pi^l implies solvability at every lower level.
    if (!found) break;
    best = l;
  }
  return best;
}

/// (v mod p, kappa): the data the local Kummer discriminant depends on.
/// kappa is present only when v = 0 mod p, computed on x / pi^v.
struct KummerClass {
  std::uint64_t v_mod_p = 0;
  std::optional<std::uint64_t> kappa;

  friend bool operator==(const KummerClass&, const KummerClass&) = default;
};

inline KummerClass kummer_class(const LocalCycloElement& x, std::uint64_t l_max) {
  const std::uint64_t v = pi_valuation(x);
  const std::uint64_t p = x.ring().p();
  if (v % p != 0) return KummerClass{v % p, std::nullopt};
  // pi^v is a p-th power, so x and x / pi^v share the class.
  return KummerClass{0, kappa(x.divide_by_pi_power(v), l_max)};
}

inline KummerClass kummer_class(const LocalCycloElement& x) {
  return kummer_class(x, kappa_cap(x.ring().p(), x.ring().m()));
}

/// Multiplying by units that are p-th powers mod pi^{l_max} leaves the
/// class of the target unchanged.
inline bool check_prop23_invariance(const LocalCycloElement& target, const std::vector<LocalCycloElement>& cofactors,
                                    std::uint64_t l_max) {
  LocalCycloElement prod = target;
  for (std::size_t i = 0; i < cofactors.size(); ++i) {
    const auto& c = cofactors[i];
    if (!c.is_unit()) throw CofactorPrecondition("cofactor " + std::to_string(i) + " is not a unit");
    if (kappa(c, l_max) != l_max)
      throw CofactorPrecondition("cofactor " + std::to_string(i) + " is not a p-th power mod pi^" +
                                 std::to_string(l_max));
    prod = prod * c;
  }
  return kummer_class(prod, l_max) == kummer_class(target, l_max);
}

inline bool check_prop23_invariance(const LocalCycloElement& target, const std::vector<LocalCycloElement>& cofactors) {
  return check_prop23_invariance(target, cofactors, kappa_cap(target.ring().p(), target.ring().m()));
}

}  // namespace towerforge
