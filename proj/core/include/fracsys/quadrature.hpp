#ifndef FRACSYS_QUADRATURE_HPP
#define FRACSYS_QUADRATURE_HPP

#include <stdexcept>
#include <string>

#include "fracsys/exponents.hpp"
#include "fracsys/profiles.hpp"
#include "fracsys/supersolution.hpp"

namespace fracsys {

/* Principal-value evaluation of the fractional Laplacian

   (-Delta)^s u(x) = -1/2 * int_{R^n} (u(x+y) + u(x-y) - 2u(x)) / |y|^{n+2s} dy

   for radial (and axis-aligned cylindrical) data. The symmetric second
   difference removes the principal value; the integral is reduced to a
   radius x polar-angle quadrature. The unit-constant convention (C(n,s) = 1)
   is the default; multiply by normalization_constant for the physical one. */

enum class TailMode {
  // Beyond the numeric region R the profile is modeled by its power tail
  // coeff * rho^decay_exponent (coefficient calibrated at R); the far angular
  // variation is dropped, the -2u(x) kernel mass is kept in closed form.
  AnalyticPowerTail,
  // For compactly supported profiles: beyond R the displaced terms vanish
  // identically and the tail is exactly the kernel mass times -2u(x).
  ZeroExtensionClosedForm
};

struct QuadratureSpec {
  int gauss_order = 12;             // points per panel, >= 4
  double near_field_radius = 0.1;   // base scale of the graded zone at rho=0
  double truncation_radius = 100.0; // far boundary of the numeric region
  TailMode tail_mode = TailMode::AnalyticPowerTail;
  double tolerance = 1e-9;          // relative; drives panel grading depth
  int max_panels = 12000;           // budget per evaluation

  void validate() const;
};

// Raised when the deterministic refinement schedule implied by the spec's
// tolerance does not fit the panel budget, i.e. the spec is inconsistent.
struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// C(n,s) = [ int_{R^n} (1 - cos(zeta_1)) / |zeta|^{n+2s} dzeta ]^{-1},
// computed as a 1-D oscillatory radial integral times an angular moment.
double normalization_constant(int n, double s, const QuadratureSpec& spec = {});

// (-Delta)^s u at |x| = r for radial u(x) = profile(|x|). Unit-constant
// convention unless `normalized` is set. r = 0 is allowed for profiles that
// are regular at the origin.
double pv_radial_fraclap(const RadialProfile& profile, int n, double s, double r,
                         const QuadratureSpec& spec = {}, bool normalized = false);

// (-Delta)^s at (r, 0, ..., 0) of the cylindrical extension
// F(x) = profile(|x_1|), i.e. a function of one coordinate viewed on R^n.
// This is the independent n-dimensional side of the dimension-reduction
// identity. Requires n >= 2.
double pv_cylindrical_fraclap(const RadialProfile& profile, int n, double s,
                              double r, const QuadratureSpec& spec = {});

// int_{-pi/2}^{pi/2} (cos theta)^{n-2+2s} dtheta; finite for n >= 2.
double angular_factor(int n, double s, const QuadratureSpec& spec = {});

// The explicit super-solution data of the failing-subcriticality regime:
//   c1 = (-Delta)^s |x|^{-2s k1} at |x| = 1,   c2 likewise with (t, k2),
//   A = (c1 c2^p)^{1/(pq-1)},  B = (c1^q c2)^{1/(pq-1)},
//   u = A (1+r)^{-2s k1},      v = B (1+r)^{-2t k2}.
// Requires beta1 < n and beta2 < n (the defining integrals diverge otherwise).
// Unless allow_sign_violation is set, throws std::domain_error when c1 <= 0 or
// c2 <= 0 (parameters outside the failing regime); when it is set, A and B are
// built from |c1|, |c2| so the (then doomed) margin check can still run.
SupersolutionPair supersolution_constants(const ProblemParams& params,
                                          const QuadratureSpec& spec = {},
                                          bool allow_sign_violation = false);

// Surface measure of the unit sphere S^{n-1}.
double sphere_area(int n);

}  // namespace fracsys

#endif
