#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "towerforge/bigint.hpp"
#include "towerforge/cyclo.hpp"
#include "towerforge/numtheory.hpp"

namespace towerforge {

/// (Z/p^m Z)* with fixed generators and a discrete-log table.
/// Odd p: one primitive root. p = 2: {-1} for m = 2, {-1, 5} for m >= 3.
class UnitGroup {
 public:
  UnitGroup(unsigned long p, unsigned m) : p_(p), m_(m) {
    if (!is_prime(BigInt(p))) throw std::invalid_argument("UnitGroup: p must be prime");
    if (m == 0) throw std::invalid_argument("UnitGroup: m must be positive");
    BigInt n = big_pow(BigInt(p), m);
    if (n <= 2) throw std::invalid_argument("UnitGroup: p^m must be at least 3");
    if (n > BigInt(1u << 24)) throw BudgetExceeded("UnitGroup: modulus " + n.get_str() + " too large to tabulate");
    n_ = to_u64(n);
    phi_ = n_ / p * (p - 1);

    if (p == 2) {
      gens_.push_back(n_ - 1);
      orders_.push_back(2);
      if (m >= 3) {
        gens_.push_back(5);
        orders_.push_back(n_ / 4);
      }
    } else {
      gens_.push_back(primitive_root());
      orders_.push_back(phi_);
    }
    exponent_ = *std::max_element(orders_.begin(), orders_.end());

    dlog_.assign(gens_.size(), std::vector<std::int64_t>(n_, -1));
    // Walk every product of generator powers.
    std::vector<std::uint64_t> t(gens_.size(), 0);
    for (std::uint64_t count = 0; count < phi_; ++count) {
      std::uint64_t x = 1;
      for (std::size_t i = 0; i < gens_.size(); ++i) x = mulmod(x, powmod_u(gens_[i], t[i]));
      for (std::size_t i = 0; i < gens_.size(); ++i) dlog_[i][x] = static_cast<std::int64_t>(t[i]);
      for (std::size_t i = gens_.size(); i-- > 0;) {
        if (++t[i] < orders_[i]) break;
        t[i] = 0;
      }
    }
  }

  unsigned long p() const { return p_; }
  unsigned m() const { return m_; }
  std::uint64_t modulus() const { return n_; }
  std::uint64_t order() const { return phi_; }
  /// Exponent of the group: every character value is a power of zeta_exponent.
  std::uint64_t exponent() const { return exponent_; }
  const std::vector<std::uint64_t>& generators() const { return gens_; }
  const std::vector<std::uint64_t>& generator_orders() const { return orders_; }

  bool is_unit(std::uint64_t a) const { return dlog_[0][a % n_] >= 0; }
  /// Exponent of generator i in a (a must be a unit).
  std::uint64_t dlog(std::size_t i, std::uint64_t a) const {
    std::int64_t v = dlog_[i][a % n_];
    if (v < 0) throw std::invalid_argument("UnitGroup::dlog: not a unit");
    return static_cast<std::uint64_t>(v);
  }

  /// Number of roots of unity in Q(zeta_{p^m}).
  std::uint64_t roots_of_unity() const { return n_ % 2 == 0 ? n_ : 2 * n_; }

 private:
  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n_);
  }
  std::uint64_t powmod_u(std::uint64_t b, std::uint64_t e) const {
    std::uint64_t r = 1 % n_;
    b %= n_;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t primitive_root() const {
    // A primitive root mod p that also generates mod p^2 generates mod p^m.
    const BigInt bp(p_), bp2 = bp * bp;
    for (unsigned long g = 2; g < p_ + 2; ++g) {
      if (mult_order(BigInt(g), bp) != BigInt(p_ - 1)) continue;
      if (m_ >= 2 && powmod(BigInt(g), BigInt(p_ - 1), bp2) == 1) return g + p_;
      return g;
    }
    throw std::logic_error("no primitive root found");
  }

  unsigned long p_;
  unsigned m_;
  std::uint64_t n_ = 0, phi_ = 0, exponent_ = 0;
  std::vector<std::uint64_t> gens_, orders_;
  std::vector<std::vector<std::int64_t>> dlog_;
};

/// Character of (Z/p^m Z)* fixed by the exponents of its generator images:
/// chi(g_i) = exp(2 pi i * images[i] / ord(g_i)).
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::uint64_t> images)
      : group_(std::move(group)), images_(std::move(images)) {
    const auto& ords = group_->generator_orders();
    if (images_.size() != ords.size()) throw std::invalid_argument("DirichletCharacter: wrong number of images");
    order_ = 1;
    for (std::size_t i = 0; i < ords.size(); ++i) {
      if (images_[i] >= ords[i]) throw std::invalid_argument("DirichletCharacter: image exponent out of range");
      order_ = std::lcm(order_, ords[i] / std::gcd(ords[i], images_[i]));
    }
    odd_ = static_cast<std::uint64_t>(value_exponent(group_->modulus() - 1)) * 2 == order_;
  }

  const UnitGroup& group() const { return *group_; }
  std::uint64_t modulus() const { return group_->modulus(); }
  const std::vector<std::uint64_t>& generator_images() const { return images_; }
  std::uint64_t order() const { return order_; }
  bool is_odd() const { return odd_; }
  bool is_trivial() const { return order_ == 1; }

  /// k with chi(a) = zeta_order^k, or -1 when gcd(a, modulus) > 1.
  std::int64_t value_exponent(std::uint64_t a) const {
    if (!group_->is_unit(a)) return -1;
    const std::uint64_t E = group_->exponent();
    const auto& ords = group_->generator_orders();
    unsigned __int128 s = 0;
    for (std::size_t i = 0; i < ords.size(); ++i)
      s += static_cast<unsigned __int128>(images_[i]) * group_->dlog(i, a) * (E / ords[i]);
    const std::uint64_t in_E = static_cast<std::uint64_t>(s % E);
    return static_cast<std::int64_t>(in_E / (E / order_));
  }

  /// chi^k.
  DirichletCharacter power(std::uint64_t k) const {
    const auto& ords = group_->generator_orders();
    std::vector<std::uint64_t> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i)
      im[i] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(images_[i]) * k % ords[i]);
    return DirichletCharacter(group_, std::move(im));
  }

  std::shared_ptr<const UnitGroup> group_ptr() const { return group_; }

 private:
  std::shared_ptr<const UnitGroup> group_;
  std::vector<std::uint64_t> images_;
  std::uint64_t order_ = 1;
  bool odd_ = false;
};

/// All phi(p^m) characters mod p^m, in lexicographic order of their images.
inline std::vector<DirichletCharacter> characters_mod(unsigned long p, unsigned m) {
  auto group = std::make_shared<const UnitGroup>(p, m);
  const auto& ords = group->generator_orders();
  std::vector<DirichletCharacter> out;
  out.reserve(group->order());
  std::vector<std::uint64_t> im(ords.size(), 0);
  for (std::uint64_t count = 0; count < group->order(); ++count) {
    out.emplace_back(group, im);
    for (std::size_t i = im.size(); i-- > 0;) {
      if (++im[i] < ords[i]) break;
      im[i] = 0;
    }
  }
  return out;
}

/// B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a in Q(zeta_order(chi)).
inline CycloElement gen_bernoulli_b1(const DirichletCharacter& chi) {
  const std::uint64_t f = chi.modulus();
  std::vector<BigRational> weights(chi.order(), BigRational(0));
  for (std::uint64_t a = 1; a <= f; ++a) {
    std::int64_t k = chi.value_exponent(a);
    if (k >= 0) weights[static_cast<std::size_t>(k)] += BigRational(from_u64(a));
  }
  CycloElement s = CycloElement::from_power_weights(static_cast<unsigned long>(chi.order()), weights);
  return s * BigRational(BigInt(1), from_u64(f));
}

enum class HminusMethod { ProductFormula, DeterminantOracle };

inline const char* to_string(HminusMethod m) {
  return m == HminusMethod::ProductFormula ? "product-formula" : "determinant-oracle";
}

struct RelClassNumber {
  unsigned long p = 0;
  unsigned m = 0;
  BigInt conductor;
  FactoredInteger value;
  HminusMethod method = HminusMethod::ProductFormula;
};

namespace detail {

inline BigInt require_positive_integer(const BigRational& v, const char* what) {
  if (v.get_den() != 1) throw std::logic_error(std::string(what) + ": h- is not an integer: " + v.get_str());
  if (sgn(v) <= 0) throw std::logic_error(std::string(what) + ": h- is not positive: " + v.get_str());
  return v.get_num();
}

}  // namespace detail

/// Odd characters mod p^m split into Galois orbits {chi^k : gcd(k, ord) = 1};
/// each orbit is represented by its lexicographically smallest member.
inline std::vector<DirichletCharacter> odd_orbit_representatives(const std::vector<DirichletCharacter>& chars) {
  if (chars.empty()) return {};
  const auto& ords = chars.front().group().generator_orders();
  auto index_of = [&](const DirichletCharacter& c) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < ords.size(); ++i) idx = idx * ords[i] + c.generator_images()[i];
    return idx;
  };
  std::vector<bool> seen(chars.size(), false);
  std::vector<DirichletCharacter> reps;
  for (const auto& chi : chars) {
    const std::uint64_t idx = index_of(chi);
    if (seen[idx] || !chi.is_odd()) continue;
    reps.push_back(chi);
    for (std::uint64_t k = 1; k <= chi.order(); ++k) {
      if (std::gcd(k, chi.order()) == 1) seen[index_of(chi.power(k))] = true;
    }
  }
  return reps;
}

/// h- = w * prod_{chi odd} (-B_{1,chi}/2), each Galois orbit contributing the
/// norm of one representative's factor.
inline BigInt relative_class_number_value(unsigned long p, unsigned m) {
  const auto chars = characters_mod(p, m);
  const BigRational minus_half(-1, 2);
  BigRational prod(from_u64(chars.front().group().roots_of_unity()));
  for (const auto& chi : odd_orbit_representatives(chars)) {
    prod *= cyclo_norm(gen_bernoulli_b1(chi) * minus_half);
  }
  return detail::require_positive_integer(prod, "relative_class_number");
}

inline RelClassNumber relative_class_number(unsigned long p, unsigned m, FactorBudget budget = {}) {
  BigInt value = relative_class_number_value(p, m);
  return RelClassNumber{p, m, big_pow(BigInt(p), m), factorize(value, budget), HminusMethod::ProductFormula};
}

/// Same product taken character by character inside Q(zeta_{phi(p^m)}),
/// without orbit grouping. Returns the assembled rational.
inline BigRational relative_class_number_direct(unsigned long p, unsigned m) {
  const auto chars = characters_mod(p, m);
  const UnitGroup& g = chars.front().group();
  const auto big = static_cast<unsigned long>(g.order());
  CycloElement acc = CycloElement::constant(big, BigRational(from_u64(g.roots_of_unity())));
  for (const auto& chi : chars) {
    if (!chi.is_odd()) continue;
    std::vector<BigRational> weights(big, BigRational(0));
    const std::uint64_t stride = big / chi.order();
    for (std::uint64_t a = 1; a <= chi.modulus(); ++a) {
      std::int64_t k = chi.value_exponent(a);
      if (k >= 0) weights[static_cast<std::size_t>(k) * stride] += BigRational(from_u64(a));
    }
    CycloElement factor = CycloElement::from_power_weights(big, weights);
    acc = acc * (factor * BigRational(BigInt(-1), 2 * from_u64(chi.modulus())));
  }
  return acc.rational_value();
}

namespace detail {

/// Fraction-free Gaussian elimination (Bareiss); exact integer determinant.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return BigInt(1);
  BigInt prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return BigInt(0);
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace detail

/// Independent route: det[theta(r_i / r_j)] over representatives r of
/// (Z/n)*/{+-1}, theta(a) = a/n - 1/2, equals prod_{chi odd} B_{1,chi}/2.
/// Hence h- = w * (-1)^k * det with k = phi(n)/2.
inline RelClassNumber relative_class_number_det(unsigned long p, unsigned m, std::uint64_t bound = 200) {
  if (!is_prime(BigInt(p))) throw std::invalid_argument("relative_class_number_det: p must be prime");
  BigInt nb = big_pow(BigInt(p), m);
  if (nb <= 2) throw std::invalid_argument("relative_class_number_det: p^m must be at least 3");
  if (nb > from_u64(bound))
    throw BudgetExceeded("relative_class_number_det: conductor " + nb.get_str() + " exceeds oracle bound " +
                         std::to_string(bound));
  const std::uint64_t n = to_u64(nb);
  std::vector<std::uint64_t> reps;
  for (std::uint64_t a = 1; 2 * a < n; ++a)
    if (std::gcd(a, n) == 1) reps.push_back(a);
  std::vector<std::uint64_t> inv(n, 0);
  for (std::uint64_t a : reps) {
    for (std::uint64_t b = 1; b < n; ++b) {
      if (a * b % n == 1) {
        inv[a] = b;
        break;
      }
    }
  }
  const std::size_t k = reps.size();
  // Entries scaled by 2n: 2n * theta(a) = 2a - n.
  std::vector<std::vector<BigInt>> mat(k, std::vector<BigInt>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t a = reps[i] * inv[reps[j]] % n;
      mat[i][j] = BigInt(2) * from_u64(a) - from_u64(n);
    }
  BigRational det(detail::bareiss_determinant(std::move(mat)), big_pow(BigInt(BigInt(2) * nb), k));
  det.canonicalize();
  const std::uint64_t w = n % 2 == 0 ? n : 2 * n;
  BigRational h = det * BigRational(from_u64(w));
  if (k % 2 == 1) h = -h;
  BigInt value = detail::require_positive_integer(h, "relative_class_number_det");
  return RelClassNumber{p, m, nb, factorize(value), HminusMethod::DeterminantOracle};
}

}  // namespace towerforge
