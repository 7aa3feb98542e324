#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "towerforge/bigint.hpp"
#include "towerforge/numtheory.hpp"

namespace towerforge {

/// A cached value disagrees with recomputation.
class CacheMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheEntry {
  unsigned long p = 0;
  unsigned m = 0;
  FactoredInteger h_minus;
  std::string computed_at;
  std::string method;

  BigInt conductor() const { return big_pow(BigInt(p), m); }

  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

namespace detail {

inline nlohmann::ordered_json big_to_json(const BigInt& v) {
  if (fits_u64(v)) return to_u64(v);
  return v.get_str();
}

inline BigInt big_from_json(const nlohmann::ordered_json& j) {
  if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument("expected an integer");
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace detail

/// One JSON object per line.
inline std::string to_json_line(const CacheEntry& e) {
  nlohmann::ordered_json j;
  j["p"] = e.p;
  j["m"] = e.m;
  j["conductor"] = detail::big_to_json(e.conductor());
  auto factors = nlohmann::ordered_json::array();
  for (const auto& [q, k] : e.h_minus.factors) factors.push_back({detail::big_to_json(q), k});
  j["h_minus"] = factors;
  j["method"] = e.method;
  j["computed_at"] = e.computed_at;
  return j.dump();
}

/// Parses one cache line. The stored factorization is recomposed; a
/// conductor that does not match p^m is rejected.
inline CacheEntry parse_cache_line(const std::string& line) {
  const auto j = nlohmann::ordered_json::parse(line);
  CacheEntry e;
  e.p = j.at("p").get<unsigned long>();
  e.m = j.at("m").get<unsigned>();
  if (detail::big_from_json(j.at("conductor")) != e.conductor())
    throw std::invalid_argument("cache line: conductor does not equal p^m");
  for (const auto& f : j.at("h_minus")) {
    e.h_minus.factors.emplace_back(detail::big_from_json(f.at(0)), f.at(1).get<unsigned>());
  }
  e.h_minus.value = e.h_minus.recompose();
  e.method = j.value("method", std::string{});
  e.computed_at = j.value("computed_at", std::string{});
  return e;
}

/// Append-only h- cache. Reads skip lines that fail to parse (a torn
/// trailing line from a concurrent writer); writes go through one mutex.
class HminusCache {
 public:
  explicit HminusCache(std::string path) : path_(std::move(path)) { reload(); }

  /// TOWERFORGE_CACHE, or ./hminus-cache.jsonl.
  static std::string default_path() {
    if (const char* env = std::getenv("TOWERFORGE_CACHE"); env && *env) return env;
    return "hminus-cache.jsonl";
  }

  const std::string& path() const { return path_; }

  void reload() {
    std::lock_guard<std::mutex> lock(mu_);
    entries_.clear();
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        CacheEntry e = parse_cache_line(line);
        entries_[{e.p, e.m}] = std::move(e);
      } catch (const std::exception&) {
        ++skipped_;
      }
    }
  }

  std::optional<CacheEntry> lookup(unsigned long p, unsigned m) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = entries_.find({p, m}); it != entries_.end()) return it->second;
    return std::nullopt;
  }

  void store(const CacheEntry& e) {
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache file " + path_);
    out << to_json_line(e) << '\n';
    out.flush();
    entries_[{e.p, e.m}] = e;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
  }
  std::size_t skipped_lines() const { return skipped_; }

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::pair<unsigned long, unsigned>, CacheEntry> entries_;
  std::size_t skipped_ = 0;
};

}  // namespace towerforge
