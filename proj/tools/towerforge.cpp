// towerforge: command-line front end for the class field tower checks.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input, 3 budget exceeded.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "towerforge/towerforge.hpp"

namespace tf = towerforge;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kBadInput = 2;
constexpr int kBudget = 3;

std::vector<tf::BigInt> parse_coeffs(const std::string& text) {
  std::vector<tf::BigInt> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty coefficient in --elem");
    tf::BigInt v;
    if (v.set_str(tok.substr(b, e - b + 1), 10) != 0) throw std::invalid_argument("bad coefficient '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--elem needs at least one coefficient");
  return out;
}

tf::CacheMode cache_mode(bool verify, bool off) {
  if (off) return tf::CacheMode::Off;
  return verify ? tf::CacheMode::Verify : tf::CacheMode::Use;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for infinite class field towers over cyclotomic fields"};
  app.require_subcommand(1);

  unsigned long p = 0;
  unsigned m = 0;
  bool use_oracle = false, verify_cache = false, no_cache = false, as_json = false;
  std::string base, modulus, h_text, elem, format = "text";
  std::uint64_t lmax = 0;
  unsigned precision = 0;
  unsigned m_from = 0, m_to = 0;
  std::string budget_text = "2048";

  auto* hminus = app.add_subcommand("hminus", "Relative class number of Q(zeta_{p^m})");
  hminus->add_option("--p", p, "prime p")->required();
  hminus->add_option("--m", m, "exponent m")->required();
  hminus->add_flag("--oracle", use_oracle, "cross-check with the determinant oracle (p^m <= 200)");
  hminus->add_flag("--verify-cache", verify_cache, "recompute cached values and fail on disagreement");
  hminus->add_flag("--no-cache", no_cache, "bypass the cache");

  auto* order = app.add_subcommand("order", "Multiplicative order of A modulo N");
  order->add_option("--base", base, "A")->required();
  order->add_option("--mod", modulus, "N")->required();

  auto* regular = app.add_subcommand("regular", "Kummer regularity test");
  regular->add_option("--p", p, "prime p")->required();

  auto* verify = app.add_subcommand("verify", "Check both tower conditions for (p, m, h)");
  verify->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  verify->add_option("--p", p, "prime p")->required();
  verify->add_option("--m", m, "exponent m")->required();
  verify->add_option("--h", h_text, "prime divisor h of h-")->required();
  verify->add_flag("--json", as_json, "JSON output");
  verify->add_flag("--verify-cache", verify_cache, "recompute cached h-");
  verify->add_flag("--no-cache", no_cache, "bypass the cache");

  auto* kappa = app.add_subcommand("kappa", "kappa invariant of a local unit in Z_p[zeta_{p^m}]");
  kappa->add_option("--p", p, "prime p (2 or 3)")->required();
  kappa->add_option("--m", m, "exponent m (1 or 2)")->required();
  kappa->add_option("--elem", elem, "comma-separated integer coefficients in 1, zeta, zeta^2, ...")->required();
  kappa->add_option("--lmax", lmax, "largest level to search (<= p^m)")->required();
  kappa->add_option("--precision", precision, "p-adic digits carried (default: enough for lmax)");

  auto* table = app.add_subcommand("reproduce-table", "Recompute the three-row table for p = 2, 3, 5");
  table->add_option("--format", format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
  table->add_flag("--verify-cache", verify_cache, "compare against the cache and fail on disagreement");

  auto* search = app.add_subcommand("search", "Evaluate every prime divisor of h- over a range of m");
  search->add_option("--p", p, "prime p")->required();
  search->add_option("--m-from", m_from, "first m")->required();
  search->add_option("--m-to", m_to, "last m")->required();
  search->add_option("--format", format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
  search->add_option("--budget", budget_text, "largest conductor p^m to attempt");
  search->add_flag("--no-cache", no_cache, "bypass the cache");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*hminus) {
      tf::HminusCache cache(tf::HminusCache::default_path());
      const tf::FactoredInteger value = tf::hminus_cached(p, m, &cache, cache_mode(verify_cache, no_cache));
      std::cout << "h-(Q(zeta_" << tf::big_pow(tf::BigInt(p), m) << ")) = " << value.value;
      if (value.factors.size() > 1 || (!value.is_one() && value.factors.front().second > 1))
        std::cout << " = " << value.to_string();
      std::cout << '\n';
      if (use_oracle) {
        const tf::RelClassNumber det = tf::relative_class_number_det(p, m);
        std::cout << "determinant oracle: " << det.value.value << '\n';
        if (!(det.value == value)) {
          std::cerr << "mismatch between product formula and determinant oracle\n";
          return kVerifyFailed;
        }
      }
      return kOk;
    }
    if (*order) {
      std::cout << tf::mult_order(tf::BigInt(base), tf::BigInt(modulus)) << '\n';
      return kOk;
    }
    if (*regular) {
      std::cout << p << (tf::is_regular_prime(p) ? " is regular" : " is irregular") << '\n';
      return kOk;
    }
    if (*verify) {
      tf::HminusCache cache(tf::HminusCache::default_path());
      const tf::FactoredInteger hm = tf::hminus_cached(p, m, &cache, cache_mode(verify_cache, no_cache));
      const tf::TowerCandidate c = tf::make_candidate(p, m, tf::BigInt(h_text), hm);
      const tf::CriterionReport r = tf::verify_candidate(c);
      std::cout << tf::emit_report(std::vector<tf::CriterionReport>{r},
                                   as_json ? tf::ReportFormat::Json : tf::ReportFormat::Text)
                << (as_json ? "\n" : "");
      return r.conclusion == tf::Conclusion::BothBranchesPass ? kOk : kVerifyFailed;
    }
    if (*kappa) {
      const std::uint64_t cap = tf::kappa_cap(p, m);
      if (lmax == 0 || lmax > cap) throw std::invalid_argument("--lmax must lie in [1, " + std::to_string(cap) + "]");
      const std::uint64_t e = tf::to_u64(tf::big_pow(tf::BigInt(p), m - 1)) * (p - 1);
      // Extra digits absorb the division by pi^v when v is a multiple of p.
      if (precision == 0) precision = static_cast<unsigned>((lmax + e + e - 1) / e + 8);
      auto ring = tf::LocalRing::make(p, m, precision);
      const auto x = tf::LocalCycloElement::from_zeta_coeffs(ring, parse_coeffs(elem));
      const tf::KummerClass kc = tf::kummer_class(x, lmax);
      std::cout << "valuation = " << tf::pi_valuation(x) << '\n' << "v mod p = " << kc.v_mod_p << '\n';
      if (kc.kappa) std::cout << "kappa = " << *kc.kappa << '\n';
      else std::cout << "kappa = undefined (valuation not divisible by p)\n";
      return kOk;
    }
    if (*table) {
      tf::HminusCache cache(tf::HminusCache::default_path());
      const auto rows = tf::reproduce_table(verify_cache ? &cache : nullptr,
                                            verify_cache ? tf::CacheMode::Verify : tf::CacheMode::Off);
      std::cout << tf::emit_report(rows, tf::parse_format(format)) << (format == "json" ? "\n" : "");
      for (const auto& r : rows)
        if (r.conclusion != tf::Conclusion::BothBranchesPass) return kVerifyFailed;
      return kOk;
    }
    if (*search) {
      tf::HminusCache cache(tf::HminusCache::default_path());
      tf::SearchOptions opt;
      opt.conductor_budget = tf::BigInt(budget_text);
      opt.cache = no_cache ? nullptr : &cache;
      const tf::SearchResult res = tf::search_candidates(p, m_from, m_to, opt);
      std::cout << tf::emit_report(res.reports, tf::parse_format(format)) << (format == "json" ? "\n" : "");
      for (const auto& note : res.partial) std::cerr << "partial: " << note << '\n';
      return res.budget_exceeded() ? kBudget : kOk;
    }
  } catch (const tf::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const tf::InsufficientPrecision& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const tf::CacheMismatch& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kBadInput;
}
