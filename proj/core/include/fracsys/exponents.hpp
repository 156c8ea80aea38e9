#ifndef FRACSYS_EXPONENTS_HPP
#define FRACSYS_EXPONENTS_HPP

#include <string>
#include <vector>

namespace fracsys {

/* Exponent algebra for the coupled system

     (-Delta)^s u = v^p,  (-Delta)^t v = u^q

   on R^n. The two scaling exponents

     beta1 = (2s/p + 2t) * p/(pq-1) = (2s + 2tp)/(pq-1)
     beta2 = (2t/q + 2s) * q/(pq-1) = (2t + 2sq)/(pq-1)

   satisfy 2s + beta1 = p*beta2 and 2t + beta2 = q*beta1. The subcriticality
   condition is

     beta1 >= n-2s   or   beta2 >= n-2t,

   and its failure (both strict reverse inequalities) is exactly the regime
   where the explicit decaying super-solution pair exists. */

struct ProblemParams {
  int n = 1;       // space dimension, >= 1
  double s = 0.5;  // fractional order of the u-equation, in (0,1)
  double t = 0.5;  // fractional order of the v-equation, in (0,1)
  double p = 2.0;  // exponent on v, > 0
  double q = 2.0;  // exponent on u, > 0

  // Throws std::invalid_argument unless n >= 1, s,t in (0,1), p,q > 0 and
  // pq > 1. pq <= 1 is rejected outright: every derived formula divides by
  // pq - 1.
  static ProblemParams make(int n, double s, double t, double p, double q);

  double pq() const { return p * q; }
};

enum class Criticality {
  SubcriticalStrict,  // strict inequality in at least one branch
  CriticalEquality,   // equality in some branch, no strict one
  Fails               // both strict reverse inequalities
};

std::string to_string(Criticality c);

struct CriticalityReport {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double lhs1 = 0.0;  // = beta1
  double rhs1 = 0.0;  // = n - 2s
  double lhs2 = 0.0;  // = beta2
  double rhs2 = 0.0;  // = n - 2t
  bool branch1_holds = false;  // beta1 >= n-2s (up to equality tolerance)
  bool branch2_holds = false;  // beta2 >= n-2t
  Criticality classification = Criticality::Fails;
  // 1/(p+1) + 1/(q+1) > (n-2s)/n, evaluated only when s == t; false otherwise.
  bool sobolev_type_holds = false;
  // Set when the existence-theorem hypotheses n > 2s+1, n > 2t+1, p,q >= 1 are
  // violated; the algebra is still computed (it is dimension-generic).
  bool hypothesis_warning = false;
  std::vector<std::string> warnings;
};

// Relative tolerance used to detect equality in the two branch comparisons.
inline constexpr double kCriticalityEqualityTol = 1e-9;

CriticalityReport classify_exponents(const ProblemParams& params);

// Decay exponents of the explicit radial super-solution pair
//   u = A (1+|x|)^{-2s k1},  v = B (1+|x|)^{-2t k2}.
// k1 = (s + tp)/(s(pq-1)) and k2 = (t + sq)/(t(pq-1)); these are the unique
// solution of 2s(k1+1) = 2t k2 p, 2t(k2+1) = 2s k1 q, and they satisfy
// 2s k1 = beta1 and 2t k2 = beta2.
struct SupersolutionExponents {
  double k1 = 0.0;
  double k2 = 0.0;
};

SupersolutionExponents supersolution_exponents(const ProblemParams& params);

}  // namespace fracsys

#endif
