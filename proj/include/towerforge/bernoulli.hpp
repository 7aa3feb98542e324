#pragma once

#include <stdexcept>
#include <vector>

#include "towerforge/bigint.hpp"
#include "towerforge/numtheory.hpp"

namespace towerforge {

/// B_0..B_max from sum_{j=0}^{k} C(k+1, j) B_j = 0, so B_1 = -1/2.
/// Immutable once built.
class BernoulliTable {
 public:
  explicit BernoulliTable(unsigned max_index) : values_(max_index + 1) {
    values_[0] = 1;
    // Row k+1 of Pascal's triangle, rolled forward each step.
    std::vector<BigInt> binom{BigInt(1), BigInt(1)};
    for (unsigned k = 1; k <= max_index; ++k) {
      std::vector<BigInt> next(k + 2);
      next[0] = 1;
      next[k + 1] = 1;
      for (unsigned j = 1; j <= k; ++j) next[j] = binom[j - 1] + binom[j];
      binom = std::move(next);
      if (k >= 3 && k % 2 == 1) {
        values_[k] = 0;
        continue;
      }
      BigRational acc(0);
      for (unsigned j = 0; j < k; ++j) {
        if (values_[j] == 0) continue;
        acc += BigRational(binom[j]) * values_[j];
      }
      values_[k] = -acc / BigRational(binom[k]);
    }
  }

  unsigned max_index() const { return static_cast<unsigned>(values_.size() - 1); }

  const BigRational& operator[](unsigned k) const {
    if (k >= values_.size()) throw std::out_of_range("BernoulliTable: index beyond table");
    return values_[k];
  }

 private:
  std::vector<BigRational> values_;
};

inline BigRational bernoulli(unsigned k) { return BernoulliTable(k)[k]; }

/// Kummer's criterion: p is regular iff p divides none of the numerators
/// of B_2, B_4, ..., B_{p-3}.
inline bool is_regular_prime(const BernoulliTable& table, unsigned long p) {
  if (!is_prime(BigInt(p))) throw std::invalid_argument("is_regular_prime: " + std::to_string(p) + " is not prime");
  if (p < 5) return true;
  const unsigned top = static_cast<unsigned>(p - 3);
  for (unsigned k = 2; k <= top; k += 2) {
    if (mpz_divisible_ui_p(table[k].get_num_mpz_t(), p)) return false;
  }
  return true;
}

inline bool is_regular_prime(unsigned long p) {
  if (!is_prime(BigInt(p))) throw std::invalid_argument("is_regular_prime: " + std::to_string(p) + " is not prime");
  return is_regular_prime(BernoulliTable(p < 5 ? 2u : static_cast<unsigned>(p - 3)), p);
}

}  // namespace towerforge
