#ifndef FRACSYS_VERIFY_HPP
#define FRACSYS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fracsys/quadrature.hpp"

namespace fracsys {

/* Every check reports signed margins (positive = claimed inequality holds at
   that sample) rather than a bare boolean, and passes iff
   min_margin >= -tolerance. The report carries everything needed to re-derive
   `passed` from the emitted JSON alone. */
struct VerificationReport {
  std::string check_name;
  std::vector<std::pair<std::string, double>> params;  // emission order fixed
  std::vector<std::string> sample_labels;              // columns of `samples`
  std::vector<std::vector<double>> samples;
  std::vector<double> margins;
  double min_margin = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  void finalize();
};

/* Sign of (-Delta)^s r^sigma at the given radii.
   - sigma in (-n, -n+2s): the value is strictly negative; margins = -value.
   - sigma = -n+2s (the fundamental exponent): annihilation; margins = -|value|
     with tolerance 1e-5 unless overridden.
   - otherwise (sigma in (-n+2s, 2s), including 0): the value is nonnegative;
     margins = value. */
VerificationReport check_sign_sigma(int n, double s, double sigma,
                                    const std::vector<double>& radii,
                                    const QuadratureSpec& spec = {},
                                    double tolerance = -1.0);

/* M(r) = r^n (-Delta)^s Theta(r) for Theta = log(1+r) r^{-n+2s}: the claim is
   a finite upper bound C0 r^{-n}. Reports the empirical sup of M, requires the
   log-log slope of M over the last third of the (ascending) radii to stay
   below +0.05, and the sup to move less than 5% when every radius is doubled. */
VerificationReport check_theta_bound(int n, double s, const std::vector<double>& radii,
                                     const QuadratureSpec& spec = {});

/* Minimum-ratio bound m(r/2) <= C m(r) for m(r) = min_{|x|<=r} profile.
   bound <= 0 selects 2^{-decay_exponent} + 0.1, the exact limit ratio for a
   nonincreasing power-decay profile plus slack. */
VerificationReport check_harnack_ratio(const RadialProfile& profile,
                                       const std::vector<double>& radii,
                                       double bound = 0.0);

/* Super-solution margins
     margin1(r) = (-Delta)^s u(r) - v(r)^p,  margin2(r) = (-Delta)^t v(r) - u(r)^q
   for the explicit pair; both must be >= -tolerance (default
   1e-4 * max(A, B)) at every sampled radius. With force = true an invalid
   pair (outside the failing regime) is checked anyway; the margins then go
   clearly negative, which is the negative control. */
VerificationReport check_supersolution(const SupersolutionPair& pair,
                                       const std::vector<double>& radii,
                                       const QuadratureSpec& spec = {},
                                       bool force = false, double tolerance = -1.0);

struct FSample {
  double a = 0.0, b = 0.0, y = 0.0;
};

// Deterministic sample generator: a in [0,1), b in [0,10], y in [-10,10].
std::vector<FSample> sample_f_inputs(std::size_t count, std::uint64_t seed);

/* f(a,b,y) = (1-a+sqrt((a+b)^2+y^2))^{-2a'} + (1-a+sqrt((a-b)^2+y^2))^{-2a'}
            - ((1+b)^2+y^2)^{-a'} - ((1-b)^2+y^2)^{-a'}
   with a' = alpha > 0; f <= 0 on a in [0,1), b >= 0, with f(1,b,y) = 0 and f
   nondecreasing in a. */
double f_comparison(double a, double b, double y, double alpha);

/* Margins are -f over all samples followed by (df/da + 1e-6) from central
   finite differences; tolerance 1e-12. Rejects samples with a >= 1. */
VerificationReport check_f_inequality(double alpha, const std::vector<FSample>& samples);

/* Cylindrical n-dimensional evaluation against angular_factor(n,s) times the
   (n-1)-dimensional radial evaluation; margins = rel_tol - relative error. */
VerificationReport check_dimension_reduction(const RadialProfile& profile, int n,
                                             double s, const std::vector<double>& radii,
                                             const QuadratureSpec& spec = {},
                                             double rel_tol = 1e-3);

}  // namespace fracsys

#endif
