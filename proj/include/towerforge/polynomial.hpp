#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/bigint.hpp"

namespace towerforge {

/// Dense univariate polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is
/// nonzero.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial monomial(std::size_t degree, T coeff = T(1)) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = std::move(coeff);
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const T& lead() const { return c_.back(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, Polynomial a) {
    if (s == 0) return {};
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  T operator()(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// Quotient and remainder. Over rings without division the divisor must
  /// be monic (or its leading coefficient must divide exactly).
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> r = c_;
    const std::size_t dd = d.c_.size() - 1;
    if (r.size() <= dd) return {Polynomial{}, *this};
    std::vector<T> q(r.size() - dd, T(0));
    for (std::size_t i = r.size(); i-- > dd;) {
      if (r[i] == 0) continue;
      T f = exact_div(r[i], d.lead());
      q[i - dd] = f;
      for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
    }
    r.resize(dd);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

  std::string to_string(const char* var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      T v = c_[i];
      bool neg = v < 0;
      if (neg) v = -v;
      if (!first) os << (neg ? " - " : " + ");
      else if (neg) os << '-';
      if (i == 0 || v != 1) os << v;
      if (i > 0) os << var;
      if (i > 1) os << '^' << i;
      first = false;
    }
    return os.str();
  }

 private:
  static T exact_div(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, BigInt>) {
      if (a % b != 0) throw std::domain_error("inexact integer polynomial division");
      return a / b;
    } else {
      return a / b;
    }
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPoly = Polynomial<BigInt>;
using RatPoly = Polynomial<BigRational>;

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<BigRational> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

/// Res(f, g) = lead(f)^deg(g) * prod_{f(a)=0} g(a), by the Euclidean
/// remainder sequence over Q.
inline BigRational resultant(RatPoly f, RatPoly g) {
  if (f.is_zero() || g.is_zero()) return BigRational(0);
  BigRational scale(1);
  for (;;) {
    if (f.degree() == 0) return scale * big_pow(f.lead(), static_cast<unsigned long>(g.degree()));
    if (g.degree() == 0) return scale * big_pow(g.lead(), static_cast<unsigned long>(f.degree()));
    RatPoly r = g % f;
    if (r.is_zero()) return BigRational(0);
    scale *= big_pow(f.lead(), static_cast<unsigned long>(g.degree() - r.degree()));
    if ((f.degree() * r.degree()) % 2 != 0) scale = -scale;
    g = std::move(f);
    f = std::move(r);
  }
}

/// Phi_n(x), obtained by dividing x^n - 1 by Phi_d for every proper divisor d.
/// Results are memoized process-wide behind a mutex.
inline const IntPoly& cyclo_poly(unsigned long n) {
  if (n == 0) throw std::invalid_argument("cyclo_poly: n must be positive");
  static std::mutex mu;
  static std::map<unsigned long, std::unique_ptr<const IntPoly>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  IntPoly p = IntPoly::monomial(n) - IntPoly{BigInt(1)};
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d == 0) p = p.divmod(cyclo_poly(d)).first;
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(n, std::make_unique<const IntPoly>(std::move(p)));
  return *it->second;
}

}  // namespace towerforge
