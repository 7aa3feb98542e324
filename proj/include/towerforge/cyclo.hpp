#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/bigint.hpp"
#include "towerforge/numtheory.hpp"
#include "towerforge/polynomial.hpp"

namespace towerforge {

/// Element of Q(zeta_n), stored as the residue of a rational polynomial
/// modulo Phi_n. coeffs() always has exactly phi(n) entries.
class CycloElement {
 public:
  CycloElement() : CycloElement(1) {}

  explicit CycloElement(unsigned long conductor) : n_(conductor) {
    if (n_ == 0) throw std::invalid_argument("CycloElement: conductor must be positive");
    c_.assign(degree_of(n_), BigRational(0));
  }

  /// Reduces an arbitrary polynomial in zeta modulo Phi_n.
  CycloElement(unsigned long conductor, const RatPoly& poly) : CycloElement(conductor) {
    assign_reduced(poly);
  }

  static CycloElement constant(unsigned long conductor, const BigRational& v) {
    CycloElement e(conductor);
    e.c_[0] = v;
    return e;
  }

  /// zeta_n^k for any integer k.
  static CycloElement zeta_power(unsigned long conductor, long k) {
    long r = k % static_cast<long>(conductor);
    if (r < 0) r += static_cast<long>(conductor);
    return CycloElement(conductor, RatPoly::monomial(static_cast<std::size_t>(r), BigRational(1)));
  }

  /// sum_k weights[k] * zeta_n^k for k in [0, weights.size()).
  static CycloElement from_power_weights(unsigned long conductor, const std::vector<BigRational>& weights) {
    std::vector<BigRational> folded(conductor, BigRational(0));
    for (std::size_t k = 0; k < weights.size(); ++k) folded[k % conductor] += weights[k];
    return CycloElement(conductor, RatPoly(std::move(folded)));
  }

  unsigned long conductor() const { return n_; }
  std::size_t degree() const { return c_.size(); }
  const std::vector<BigRational>& coeffs() const { return c_; }
  RatPoly as_polynomial() const { return RatPoly(c_); }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  BigRational rational_value() const {
    if (!is_rational()) throw std::domain_error("CycloElement is not rational");
    return c_[0];
  }

  CycloElement& operator+=(const CycloElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycloElement& operator-=(const CycloElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CycloElement& operator*=(const BigRational& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend CycloElement operator+(CycloElement a, const CycloElement& b) { return a += b; }
  friend CycloElement operator-(CycloElement a, const CycloElement& b) { return a -= b; }
  friend CycloElement operator*(CycloElement a, const BigRational& s) { return a *= s; }
  friend CycloElement operator*(const CycloElement& a, const CycloElement& b) {
    a.check_same(b);
    return CycloElement(a.n_, a.as_polynomial() * b.as_polynomial());
  }
  friend bool operator==(const CycloElement& a, const CycloElement& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

  /// Multiplicative inverse of a nonzero element via the extended Euclidean
  /// algorithm against Phi_n.
  CycloElement inverse() const {
    if (is_zero()) throw std::domain_error("CycloElement: inverse of zero");
    RatPoly r0 = to_rational(cyclo_poly(n_)), r1 = as_polynomial();
    RatPoly s0{}, s1{BigRational(1)};
    while (r1.degree() > 0) {
      auto [q, r] = r0.divmod(r1);
      RatPoly s = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r1 is a nonzero constant because Phi_n is irreducible.
    BigRational inv = BigRational(1) / r1.lead();
    return CycloElement(n_, inv * s1);
  }

  std::string to_string() const { return as_polynomial().to_string("z"); }

 private:
  static std::size_t degree_of(unsigned long n) { return static_cast<std::size_t>(cyclo_poly(n).degree()); }

  void assign_reduced(const RatPoly& poly) {
    RatPoly r = poly % to_rational(cyclo_poly(n_));
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = r.coeff(i);
  }

  void check_same(const CycloElement& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CycloElement: conductor mismatch");
  }

  unsigned long n_;
  std::vector<BigRational> c_;
};

/// Product of the phi(n) Galois conjugates of e, i.e. Res(Phi_n, e).
inline BigRational cyclo_norm(const CycloElement& e) {
  return resultant(to_rational(cyclo_poly(e.conductor())), e.as_polynomial());
}

}  // namespace towerforge
