#ifndef FRACSYS_SUPERSOLUTION_HPP
#define FRACSYS_SUPERSOLUTION_HPP

#include "fracsys/exponents.hpp"
#include "fracsys/profiles.hpp"

namespace fracsys {

// The explicit decaying super-solution pair
//   u = A (1+r)^{-2s k1},  v = B (1+r)^{-2t k2}
// together with the constants that balance it: c1 A = B^p and c2 B = A^q.
struct SupersolutionPair {
  ProblemParams params;
  double k1 = 0.0;
  double k2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double A = 0.0;
  double B = 0.0;
  RadialProfile u_profile;
  RadialProfile v_profile;

  // True when c1, c2 > 0, c1*A = B^p and c2*B = A^q to 1e-10 relative, and
  // both decay exponents sit strictly inside the admissible window
  // (2s k1 < n-2s, 2t k2 < n-2t).
  bool valid() const;
};

}  // namespace fracsys

#endif
