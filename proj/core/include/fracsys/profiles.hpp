#ifndef FRACSYS_PROFILES_HPP
#define FRACSYS_PROFILES_HPP

#include <functional>
#include <string>
#include <vector>

namespace fracsys {

enum class Regularity { C2Local, BoundedOnly };

// How the profile behaves beyond any finite radius. The far-field handling of
// the singular-integral evaluator keys off this.
enum class TailKind {
  Power,       // value ~ coeff * r^decay_exponent as r -> infinity
  SuperPower,  // decays faster than any power (e.g. Gaussian)
  Compact      // identically zero beyond support_radius
};

// A radius where the profile is less than C^2: a kink, a truncation corner, a
// support edge, or an algebraic singularity. `exponent` is the local growth /
// Hoelder exponent of the value near the feature (value ~ |r - radius|^exponent
// up to smooth parts); it controls how deeply quadrature panels are graded.
struct ProfileFeature {
  double radius = 0.0;
  double exponent = 1.0;
};

/* A radial function r |-> value on [0, infinity), with the metadata the
   principal-value evaluator needs: tail behavior, regularity, and the radii
   where it is not smooth. Profiles are values; copying is cheap enough. */
struct RadialProfile {
  std::function<double(double)> value_fn;
  double decay_exponent = 0.0;  // meaningful for TailKind::Power
  TailKind tail = TailKind::Power;
  double support_radius = 0.0;  // meaningful for TailKind::Compact
  Regularity regularity = Regularity::C2Local;
  bool singular_at_zero = false;
  std::vector<ProfileFeature> features;
  std::string name;

  double operator()(double r) const { return value_fn(r); }

  // r^sigma. Singular at zero for sigma < 0; non-C2 at zero for fractional
  // sigma > 0.
  static RadialProfile power(double sigma);

  // log(1+r) * r^(-n+2s); requires n > 2s.
  static RadialProfile theta(int n, double s);

  // (1+r)^(-beta), the decay shape of the explicit super-solutions.
  static RadialProfile inverse_power(double beta);

  // Constant on (0, eps], r^sigma beyond: the truncated comparison shape.
  static RadialProfile truncated_power(double sigma, double eps);

  // (1 - r^2)_+^s, the bounded-domain shape with zero exterior.
  static RadialProfile bump(double s);

  // exp(-r^2).
  static RadialProfile gaussian();

  static RadialProfile constant(double c);

  // a*f + b*g. Tail metadata is merged: the slower power decay wins.
  static RadialProfile linear_combination(double a, const RadialProfile& f,
                                          double b, const RadialProfile& g);

  // c*f with all metadata preserved.
  static RadialProfile scaled(const RadialProfile& f, double c);

  // r |-> f(lambda * r); features and support scale by 1/lambda.
  static RadialProfile rescaled(const RadialProfile& f, double lambda);
};

}  // namespace fracsys

#endif
