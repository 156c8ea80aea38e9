#include "fracsys/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsys {

ProblemParams ProblemParams::make(int n, double s, double t, double p, double q) {
  if (n < 1) throw std::invalid_argument("ProblemParams: n must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("ProblemParams: s must lie in (0,1)");
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("ProblemParams: t must lie in (0,1)");
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("ProblemParams: p, q must be > 0");
  if (!(p * q > 1.0)) throw std::invalid_argument("ProblemParams: pq must be > 1");
  return ProblemParams{n, s, t, p, q};
}

std::string to_string(Criticality c) {
  switch (c) {
    case Criticality::SubcriticalStrict: return "SubcriticalStrict";
    case Criticality::CriticalEquality: return "CriticalEquality";
    case Criticality::Fails: return "Fails";
  }
  return "Unknown";
}

namespace {

enum class Cmp { StrictlyGreater, Equal, StrictlyLess };

Cmp compare(double lhs, double rhs) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  if (std::abs(lhs - rhs) <= kCriticalityEqualityTol * scale) return Cmp::Equal;
  return lhs > rhs ? Cmp::StrictlyGreater : Cmp::StrictlyLess;
}

}  // namespace

CriticalityReport classify_exponents(const ProblemParams& params) {
  const double n = static_cast<double>(params.n);
  const double s = params.s, t = params.t, p = params.p, q = params.q;
  const double denom = p * q - 1.0;

  CriticalityReport r;
  r.beta1 = (2.0 * s + 2.0 * t * p) / denom;
  r.beta2 = (2.0 * t + 2.0 * s * q) / denom;
  r.lhs1 = r.beta1;
  r.rhs1 = n - 2.0 * s;
  r.lhs2 = r.beta2;
  r.rhs2 = n - 2.0 * t;

  const Cmp c1 = compare(r.lhs1, r.rhs1);
  const Cmp c2 = compare(r.lhs2, r.rhs2);
  r.branch1_holds = (c1 != Cmp::StrictlyLess);
  r.branch2_holds = (c2 != Cmp::StrictlyLess);

  if (c1 == Cmp::StrictlyGreater || c2 == Cmp::StrictlyGreater) {
    r.classification = Criticality::SubcriticalStrict;
  } else if (c1 == Cmp::Equal || c2 == Cmp::Equal) {
    r.classification = Criticality::CriticalEquality;
  } else {
    r.classification = Criticality::Fails;
  }

  if (compare(s, t) == Cmp::Equal) {
    r.sobolev_type_holds = 1.0 / (p + 1.0) + 1.0 / (q + 1.0) > (n - 2.0 * s) / n;
  }

  if (!(n > 2.0 * s + 1.0)) {
    r.hypothesis_warning = true;
    r.warnings.push_back("n <= 2s+1: outside the existence-theorem hypotheses");
  }
  if (!(n > 2.0 * t + 1.0)) {
    r.hypothesis_warning = true;
    r.warnings.push_back("n <= 2t+1: outside the existence-theorem hypotheses");
  }
  if (p < 1.0 || q < 1.0) {
    r.hypothesis_warning = true;
    r.warnings.push_back("p < 1 or q < 1: existence machinery assumes p,q >= 1");
  }
  return r;
}

SupersolutionExponents supersolution_exponents(const ProblemParams& params) {
  const double s = params.s, t = params.t, p = params.p, q = params.q;
  const double denom = p * q - 1.0;
  return SupersolutionExponents{(s + t * p) / (s * denom), (t + s * q) / (t * denom)};
}

}  // namespace fracsys
