#pragma once

#include <stdexcept>
#include <string>

#include "towerforge/bigint.hpp"
#include "towerforge/numtheory.hpp"

namespace towerforge {

/// m = p_1^k ... p_h^k with every p_i of residue norm q.
struct RayModulus {
  BigInt residue_norm;
  unsigned k = 1;
  unsigned num_primes = 1;
};

/// |(O/P^k)*| = q^{k-1} (q - 1) for a prime P of norm q.
inline BigInt local_unit_order(const BigInt& q, unsigned k) {
  if (!is_prime_power(q)) throw std::invalid_argument("local_unit_order: " + q.get_str() + " is not a prime power");
  if (k == 0) throw std::invalid_argument("local_unit_order: k must be positive");
  return big_pow(q, k - 1) * (q - 1);
}

struct RayNumerator {
  FactoredInteger value;  // |(O/m)*|
  BigInt p_part;          // q^{h(k-1)}
};

/// |(O/m)*| = prod_i |(O/p_i^k)*| by CRT.
inline RayNumerator ray_numerator(const RayModulus& mod) {
  if (mod.num_primes == 0) throw std::invalid_argument("ray_numerator: need at least one prime");
  const BigInt local = local_unit_order(mod.residue_norm, mod.k);
  const BigInt value = big_pow(local, mod.num_primes);
  return RayNumerator{factorize(value),
                      big_pow(mod.residue_norm, static_cast<unsigned long>(mod.num_primes) * (mod.k - 1))};
}

/// Orders in 1 -> O*/O^m -> (O/m)* -> Cl^m -> Cl -> 1.
struct RayOrderIdentity {
  BigInt unit_index;
  BigInt residue_unit_order;
  BigInt class_order;
  BigInt ray_class_order;
};

inline bool check_ray_identity(const RayOrderIdentity& d) {
  if (d.unit_index <= 0 || d.residue_unit_order <= 0 || d.class_order <= 0 || d.ray_class_order <= 0)
    throw std::invalid_argument("check_ray_identity: orders must be positive");
  return d.ray_class_order * d.unit_index == d.residue_unit_order * d.class_order;
}

}  // namespace towerforge
