#include "fracsys/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsys {

RadialProfile RadialProfile::power(double sigma) {
  RadialProfile p;
  p.value_fn = [sigma](double r) { return std::pow(r, sigma); };
  p.decay_exponent = sigma;
  p.tail = TailKind::Power;
  p.singular_at_zero = sigma < 0.0;
  p.regularity = Regularity::C2Local;
  // Integer sigma >= 0 (0, 1, 2, ...) is smooth at the origin as a 1-D
  // function; anything else has a feature there.
  const bool smooth_at_zero =
      sigma >= 0.0 && std::abs(sigma - std::round(sigma)) < 1e-14;
  if (!smooth_at_zero) p.features.push_back({0.0, sigma});
  p.name = "power:" + std::to_string(sigma);
  return p;
}

RadialProfile RadialProfile::theta(int n, double s) {
  if (!(static_cast<double>(n) > 2.0 * s)) {
    throw std::invalid_argument("theta profile requires n > 2s");
  }
  const double sigma = -static_cast<double>(n) + 2.0 * s;
  RadialProfile p;
  p.value_fn = [sigma](double r) { return std::log1p(r) * std::pow(r, sigma); };
  p.decay_exponent = sigma;  // up to the log factor; tail handling reads the
                             // profile pointwise, so the log is not dropped
  p.tail = TailKind::Power;
  p.singular_at_zero = sigma + 1.0 < 0.0;  // log1p(r) ~ r at zero
  p.features.push_back({0.0, sigma + 1.0});
  p.name = "theta";
  return p;
}

RadialProfile RadialProfile::inverse_power(double beta) {
  RadialProfile p;
  p.value_fn = [beta](double r) { return std::pow(1.0 + r, -beta); };
  p.decay_exponent = -beta;
  p.tail = TailKind::Power;
  p.features.push_back({0.0, 1.0});  // cone kink of (1+|x|)^(-beta) at x = 0
  p.name = "inverse_power:" + std::to_string(beta);
  return p;
}

RadialProfile RadialProfile::truncated_power(double sigma, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("truncated_power requires eps > 0");
  RadialProfile p;
  const double cap = std::pow(eps, sigma);
  p.value_fn = [sigma, eps, cap](double r) {
    return r <= eps ? cap : std::pow(r, sigma);
  };
  p.decay_exponent = sigma;
  p.tail = TailKind::Power;
  p.features.push_back({eps, 1.0});  // slope jump at the truncation radius
  p.name = "truncated_power:" + std::to_string(sigma);
  return p;
}

RadialProfile RadialProfile::bump(double s) {
  RadialProfile p;
  p.value_fn = [s](double r) {
    const double v = 1.0 - r * r;
    return v > 0.0 ? std::pow(v, s) : 0.0;
  };
  p.tail = TailKind::Compact;
  p.support_radius = 1.0;
  p.features.push_back({1.0, s});  // dist^s edge at the support boundary
  p.name = "bump";
  return p;
}

RadialProfile RadialProfile::gaussian() {
  RadialProfile p;
  p.value_fn = [](double r) { return std::exp(-r * r); };
  p.tail = TailKind::SuperPower;
  p.name = "gaussian";
  return p;
}

RadialProfile RadialProfile::constant(double c) {
  RadialProfile p;
  p.value_fn = [c](double) { return c; };
  p.decay_exponent = 0.0;
  p.tail = TailKind::Power;
  p.name = "constant";
  return p;
}

RadialProfile RadialProfile::linear_combination(double a, const RadialProfile& f,
                                                double b, const RadialProfile& g) {
  RadialProfile p;
  auto fv = f.value_fn, gv = g.value_fn;
  p.value_fn = [a, fv, b, gv](double r) { return a * fv(r) + b * gv(r); };
  if (f.tail == TailKind::Power || g.tail == TailKind::Power) {
    p.tail = TailKind::Power;
    if (f.tail == TailKind::Power && g.tail == TailKind::Power) {
      p.decay_exponent = std::max(f.decay_exponent, g.decay_exponent);
    } else {
      p.decay_exponent = f.tail == TailKind::Power ? f.decay_exponent : g.decay_exponent;
    }
  } else if (f.tail == TailKind::Compact && g.tail == TailKind::Compact) {
    p.tail = TailKind::Compact;
    p.support_radius = std::max(f.support_radius, g.support_radius);
  } else if (f.tail == TailKind::Compact || g.tail == TailKind::Compact) {
    // SuperPower + Compact: dominated by the superpower part only up to the
    // support edge; treat as SuperPower with the edge kept as a feature.
    p.tail = TailKind::SuperPower;
  } else {
    p.tail = TailKind::SuperPower;
  }
  p.regularity = (f.regularity == Regularity::BoundedOnly ||
                  g.regularity == Regularity::BoundedOnly)
                     ? Regularity::BoundedOnly
                     : Regularity::C2Local;
  p.singular_at_zero = f.singular_at_zero || g.singular_at_zero;
  p.features = f.features;
  p.features.insert(p.features.end(), g.features.begin(), g.features.end());
  p.name = "combo(" + f.name + "," + g.name + ")";
  return p;
}

RadialProfile RadialProfile::scaled(const RadialProfile& f, double c) {
  RadialProfile p = f;
  auto fv = f.value_fn;
  p.value_fn = [fv, c](double r) { return c * fv(r); };
  p.name = std::to_string(c) + "*" + f.name;
  return p;
}

RadialProfile RadialProfile::rescaled(const RadialProfile& f, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("rescaled requires lambda > 0");
  RadialProfile p = f;
  auto fv = f.value_fn;
  p.value_fn = [fv, lambda](double r) { return fv(lambda * r); };
  for (auto& feat : p.features) feat.radius /= lambda;
  if (p.tail == TailKind::Compact) p.support_radius /= lambda;
  p.name = f.name + "@" + std::to_string(lambda);
  return p;
}

}  // namespace fracsys
