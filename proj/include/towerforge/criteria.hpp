#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "towerforge/bernoulli.hpp"
#include "towerforge/bigint.hpp"
#include "towerforge/numtheory.hpp"

namespace towerforge {

/// K = Q(zeta_{p^m}) together with a prime h dividing h-(K), the degree of
/// a cyclic unramified H/K.
struct TowerCandidate {
  unsigned long p = 0;
  unsigned m = 0;
  BigInt h;
  BigInt f;       // order of p in (Z/hZ)*
  BigInt phi_pm;  // phi(p^m)
  FactoredInteger h_minus;
};

/// Validates the candidate and fills the derived fields. Throws
/// std::invalid_argument when h is not prime or does not divide h-.
inline TowerCandidate make_candidate(unsigned long p, unsigned m, const BigInt& h, const FactoredInteger& h_minus,
                                     FactorBudget budget = {}) {
  if (!is_prime(BigInt(p))) throw std::invalid_argument("candidate: p = " + std::to_string(p) + " is not prime");
  if (m == 0) throw std::invalid_argument("candidate: m must be positive");
  if (!is_prime(h)) throw std::invalid_argument("candidate: h = " + h.get_str() + " is not prime");
  if (h_minus.value % h != 0)
    throw std::invalid_argument("candidate: h = " + h.get_str() + " does not divide h- = " + h_minus.value.get_str());
  if (h == p) throw std::invalid_argument("candidate: h must differ from p");
  TowerCandidate c;
  c.p = p;
  c.m = m;
  c.h = h;
  c.f = mult_order(BigInt(p), h, budget);
  c.phi_pm = big_pow(BigInt(p), m - 1) * (p - 1);
  c.h_minus = h_minus;
  if ((h - 1) % c.f != 0) throw std::logic_error("candidate: order does not divide h - 1");
  return c;
}

struct ConditionI {
  bool holds = false;
  bool regular = false;
  BigInt margin;  // (f^2 - 4f) - 2 h phi(p^m)
};

struct ConditionII {
  bool holds = false;
  BigInt bound;   // 2 phi(p^{m+1}) + 4
  BigInt margin;  // h - bound
};

/// p | |Cl_H| branch: p regular and f^2 - 4f >= 2 h phi(p^m).
inline ConditionI check_condition_I(const TowerCandidate& c, bool regular) {
  ConditionI out;
  out.regular = regular;
  out.margin = c.f * c.f - 4 * c.f - 2 * c.h * c.phi_pm;
  out.holds = regular && out.margin >= 0;
  return out;
}

/// p does not divide |Cl_H| branch: h >= 2 phi(p^{m+1}) + 4.
inline ConditionII check_condition_II(const TowerCandidate& c) {
  ConditionII out;
  out.bound = 2 * big_pow(BigInt(c.p), c.m) * (c.p - 1) + 4;
  out.margin = c.h - out.bound;
  out.holds = out.margin >= 0;
  return out;
}

/// |GL_l(F_p)| = (p^l - 1)(p^l - p)...(p^l - p^{l-1}).
inline BigInt gl_order(unsigned long l, unsigned long p) {
  if (l == 0) throw std::invalid_argument("gl_order: l must be positive");
  const BigInt pl = big_pow(BigInt(p), l);
  BigInt r(1), pi(1);
  for (unsigned long i = 0; i < l; ++i) {
    r *= pl - pi;
    pi *= p;
  }
  return r;
}

/// Least l with h | |GL_l(F_p)|. Tracked mod h via
/// |GL_{l+1}| = |GL_l| * p^l * (p^{l+1} - 1); the result must equal the
/// order of p mod h.
inline std::uint64_t min_rank_l(unsigned long p, const BigInt& h) {
  if (h == p) throw std::invalid_argument("min_rank_l: p must differ from h");
  if (!is_prime(h)) throw std::invalid_argument("min_rank_l: h must be prime");
  const BigInt bp(p);
  BigInt residue = mod_floor(bp - 1, h);  // |GL_1| = p - 1
  BigInt pl = mod_floor(bp, h);           // p^l mod h
  std::uint64_t l = 1;
  while (residue != 0) {
    const BigInt next_pl = pl * bp % h;
    residue = residue * pl % h * mod_floor(next_pl - 1, h) % h;
    pl = next_pl;
    ++l;
    if (BigInt(l) > h) throw std::logic_error("min_rank_l: no rank found below h");
  }
  if (BigInt(l) != mult_order(bp, h)) throw std::logic_error("min_rank_l: disagrees with mult_order");
  return l;
}

/// Signature of L = H(x^{1/p}), degree p * h * phi(p^m), totally complex.
struct Signature {
  BigInt r1;
  BigInt r2;
};

inline Signature signature_of_L(const TowerCandidate& c) {
  if (big_pow(BigInt(c.p), c.m) <= 2) throw std::invalid_argument("signature_of_L: p^m must be at least 3");
  return Signature{BigInt(0), BigInt(c.p) * c.phi_pm * c.h / 2};
}

/// h1, r1, r2 for the finiteness test; h2 is bounded below by h1^2/4.
struct GsData {
  BigInt h1;
  BigInt r1;
  BigInt r2;

  BigRational h2_lower() const { return BigRational(h1 * h1, 4); }
};

/// h1^2/4 - h1 - (r1 + r2), as an exact rational.
inline BigRational gs_margin(const BigInt& h1, const BigInt& r1, const BigInt& r2) {
  BigRational m(h1 * h1, 4);
  m.canonicalize();
  return m - BigRational(h1) - BigRational(r1 + r2);
}

/// A finite maximal unramified p-extension would need
/// h1^2/4 - h1 < h2 - h1 <= r1 + r2; a nonnegative margin rules it out.
inline bool gs_forces_infinite(const BigInt& h1, const BigInt& r1, const BigInt& r2) {
  if (h1 < 0 || r1 < 0 || r2 < 0) throw std::invalid_argument("gs_forces_infinite: inputs must be nonnegative");
  return gs_margin(h1, r1, r2) >= 0;
}

inline bool gs_forces_infinite(const GsData& d) { return gs_forces_infinite(d.h1, d.r1, d.r2); }

enum class Conclusion { BothBranchesPass, OnlyI, OnlyII, Fail };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::BothBranchesPass: return "both-branches-pass";
    case Conclusion::OnlyI: return "only-I";
    case Conclusion::OnlyII: return "only-II";
    case Conclusion::Fail: return "fail";
  }
  return "?";
}

inline Conclusion conclude(bool cond_I, bool cond_II) {
  if (cond_I && cond_II) return Conclusion::BothBranchesPass;
  if (cond_I) return Conclusion::OnlyI;
  if (cond_II) return Conclusion::OnlyII;
  return Conclusion::Fail;
}

struct CriterionReport {
  TowerCandidate candidate;
  ConditionI cond_I;
  ConditionII cond_II;
  bool regular_p = false;
  Conclusion conclusion = Conclusion::Fail;
};

/// Runs regularity and both conditions. Whether p | |Cl_H| is unknown, so
/// only BothBranchesPass settles the existence of the tower.
inline CriterionReport verify_candidate(const TowerCandidate& c) {
  if (!is_prime(c.h)) throw std::invalid_argument("verify_candidate: h is not prime");
  if (c.h_minus.value % c.h != 0) throw std::invalid_argument("verify_candidate: h does not divide h-");
  CriterionReport r;
  r.candidate = c;
  r.regular_p = is_regular_prime(c.p);
  r.cond_I = check_condition_I(c, r.regular_p);
  r.cond_II = check_condition_II(c);
  r.conclusion = conclude(r.cond_I.holds, r.cond_II.holds);
  return r;
}

}  // namespace towerforge
