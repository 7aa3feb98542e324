// Recomputes h-(Q(zeta_81)), picks its prime factor and prints the checks.

#include <iostream>

#include "towerforge/towerforge.hpp"

int main() {
  using namespace towerforge;
  const RelClassNumber hm = relative_class_number(3, 4);
  std::cout << "h- = " << hm.value.to_string() << '\n';

  const TowerCandidate c = make_candidate(3, 4, hm.value.largest_prime(), hm.value);
  const CriterionReport r = verify_candidate(c);
  std::cout << "f_{3,h} = " << c.f << ", condition I margin " << r.cond_I.margin << ", condition II bound "
            << r.cond_II.bound << '\n';

  const Signature sig = signature_of_L(c);
  std::cout << "L: r1 = " << sig.r1 << ", r2 = " << sig.r2 << ", GS forces infinite with h1 = h: "
            << std::boolalpha << gs_forces_infinite(c.h, sig.r1, sig.r2) << '\n';
  std::cout << "conclusion: " << to_string(r.conclusion) << '\n';
}
