#pragma once

#include <algorithm>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "towerforge/bigint.hpp"
#include "towerforge/cache.hpp"
#include "towerforge/characters.hpp"
#include "towerforge/criteria.hpp"
#include "towerforge/numtheory.hpp"

namespace towerforge {

enum class CacheMode { Use, Verify, Off };

/// h- of Q(zeta_{p^m}) through the cache. A hit is trusted in Use mode and
/// recomputed in Verify mode (disagreement throws CacheMismatch); a miss
/// is computed and appended.
inline FactoredInteger hminus_cached(unsigned long p, unsigned m, HminusCache* cache, CacheMode mode = CacheMode::Use,
                                     FactorBudget budget = {}) {
  if (!cache || mode == CacheMode::Off) return relative_class_number(p, m, budget).value;
  if (auto hit = cache->lookup(p, m)) {
    if (mode == CacheMode::Use) return hit->h_minus;
    FactoredInteger fresh = relative_class_number(p, m, budget).value;
    if (!(fresh == hit->h_minus))
      throw CacheMismatch("cache entry for " + std::to_string(p) + "^" + std::to_string(m) + " says " +
                          hit->h_minus.to_string() + ", recomputed " + fresh.to_string());
    return fresh;
  }
  FactoredInteger fresh = relative_class_number(p, m, budget).value;
  cache->store(CacheEntry{p, m, fresh, detail::utc_timestamp(), to_string(HminusMethod::ProductFormula)});
  return fresh;
}

/// One line of the reproduced table.
struct TableRow {
  unsigned long p = 0;
  unsigned m = 0;
  BigInt conductor;
  FactoredInteger h_minus;
  BigInt h;
  BigInt f;
  bool regular = false;
  ConditionI cond_I;
  ConditionII cond_II;
  Conclusion conclusion = Conclusion::Fail;

  std::string field() const { return "Q(zeta_" + conductor.get_str() + ")"; }
};

inline TableRow to_row(const CriterionReport& r) {
  const auto& c = r.candidate;
  return TableRow{c.p, c.m, big_pow(BigInt(c.p), c.m), c.h_minus, c.h, c.f, r.regular_p, r.cond_I, r.cond_II,
                  r.conclusion};
}

/// The three fields Q(zeta_128), Q(zeta_81), Q(zeta_125).
inline const std::vector<std::pair<unsigned long, unsigned>>& table_fields() {
  static const std::vector<std::pair<unsigned long, unsigned>> fields{{2, 7}, {3, 4}, {5, 3}};
  return fields;
}

/// Recomputes h-, takes its largest prime factor as h, and verifies both
/// conditions. With a cache in Verify mode, a stale cache value is a hard
/// failure.
inline std::vector<TableRow> reproduce_table(HminusCache* cache = nullptr, CacheMode mode = CacheMode::Off) {
  std::vector<TableRow> rows;
  for (const auto& [p, m] : table_fields()) {
    const FactoredInteger hm = hminus_cached(p, m, cache, mode);
    if (hm.is_one()) throw std::logic_error("reproduce_table: h- = 1 for conductor " + std::to_string(p));
    const TowerCandidate c = make_candidate(p, m, hm.largest_prime(), hm);
    rows.push_back(to_row(verify_candidate(c)));
  }
  return rows;
}

struct SearchOptions {
  BigInt conductor_budget{2048};
  FactorBudget factor_budget{};
  HminusCache* cache = nullptr;
  CacheMode cache_mode = CacheMode::Use;
  bool parallel = true;
};

struct SearchResult {
  std::vector<CriterionReport> reports;
  /// Conductors (or factors) skipped because a budget ran out.
  std::vector<std::string> partial;

  bool budget_exceeded() const { return !partial.empty(); }
};

namespace detail {

inline int conclusion_rank(Conclusion c) {
  switch (c) {
    case Conclusion::BothBranchesPass: return 0;
    case Conclusion::OnlyI: return 1;
    case Conclusion::OnlyII: return 2;
    case Conclusion::Fail: return 3;
  }
  return 4;
}

struct ConductorOutcome {
  std::vector<CriterionReport> reports;
  std::vector<std::string> partial;
};

inline ConductorOutcome search_one(unsigned long p, unsigned m, const SearchOptions& opt) {
  ConductorOutcome out;
  const BigInt n = big_pow(BigInt(p), m);
  const std::string tag = std::to_string(p) + "^" + std::to_string(m);
  if (n <= 2) return out;  // h- = 1 trivially
  if (n > opt.conductor_budget) {
    out.partial.push_back(tag + ": conductor " + n.get_str() + " exceeds budget " + opt.conductor_budget.get_str());
    return out;
  }
  FactoredInteger hm;
  std::vector<BigInt> primes;
  try {
    hm = hminus_cached(p, m, opt.cache, opt.cache_mode, opt.factor_budget);
    for (const auto& fq : hm.factors) primes.push_back(fq.first);
  } catch (const BudgetExceeded& e) {
    // Fall back to the certified part of the factorization.
    const BigInt value = relative_class_number_value(p, m);
    PartialFactorization pf = factorize_partial(value, opt.factor_budget);
    hm.value = value;
    hm.factors = pf.factors;
    for (const auto& fq : pf.factors) primes.push_back(fq.first);
    out.partial.push_back(tag + ": h- only partially factored, cofactor " + pf.unfactored.get_str() + " left");
  }
  for (const BigInt& h : primes) {
    if (h == p) continue;
    try {
      TowerCandidate c;
      c.p = p;
      c.m = m;
      c.h = h;
      c.f = mult_order(BigInt(p), h, opt.factor_budget);
      c.phi_pm = big_pow(BigInt(p), m - 1) * (p - 1);
      c.h_minus = hm;
      CriterionReport r;
      r.candidate = c;
      r.regular_p = is_regular_prime(p);
      r.cond_I = check_condition_I(c, r.regular_p);
      r.cond_II = check_condition_II(c);
      r.conclusion = conclude(r.cond_I.holds, r.cond_II.holds);
      out.reports.push_back(std::move(r));
    } catch (const BudgetExceeded& e) {
      out.partial.push_back(tag + ": h = " + h.get_str() + " skipped (" + e.what() + ")");
    }
  }
  return out;
}

}  // namespace detail

/// For each m in [m_from, m_to], every prime factor h of h-(Q(zeta_{p^m}))
/// is checked. Reports are sorted by conclusion, then condition (I)
/// margin, then condition (II) margin, both descending.
inline SearchResult search_candidates(unsigned long p, unsigned m_from, unsigned m_to, const SearchOptions& opt = {}) {
  if (!is_prime(BigInt(p))) throw std::invalid_argument("search: p must be prime");
  if (m_from == 0 || m_from > m_to) throw std::invalid_argument("search: need 1 <= m_from <= m_to");
  std::vector<detail::ConductorOutcome> outcomes;
  if (opt.parallel) {
    std::vector<std::future<detail::ConductorOutcome>> jobs;
    for (unsigned m = m_from; m <= m_to; ++m)
      jobs.push_back(std::async(std::launch::async, [p, m, &opt] { return detail::search_one(p, m, opt); }));
    for (auto& j : jobs) outcomes.push_back(j.get());
  } else {
    for (unsigned m = m_from; m <= m_to; ++m) outcomes.push_back(detail::search_one(p, m, opt));
  }
  SearchResult result;
  for (auto& o : outcomes) {
    for (auto& r : o.reports) result.reports.push_back(std::move(r));
    for (auto& s : o.partial) result.partial.push_back(std::move(s));
  }
  std::stable_sort(result.reports.begin(), result.reports.end(), [](const CriterionReport& a, const CriterionReport& b) {
    const int ra = detail::conclusion_rank(a.conclusion), rb = detail::conclusion_rank(b.conclusion);
    if (ra != rb) return ra < rb;
    if (a.cond_I.margin != b.cond_I.margin) return a.cond_I.margin > b.cond_I.margin;
    return a.cond_II.margin > b.cond_II.margin;
  });
  return result;
}

}  // namespace towerforge
