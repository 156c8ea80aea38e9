#include "fracsys/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

namespace fracsys {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1], ascending
  std::vector<double> w;
};

GaussRule make_gauss_rule(int order) {
  // Nodes are the Legendre zeros; weights w = 2 / ((1-x^2) P_n'(x)^2).
  const auto positive = boost::math::legendre_p_zeros<double>(order);
  GaussRule rule;
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
    if (*it > 0.0) rule.x.push_back(-*it);
  }
  for (double z : positive) rule.x.push_back(z);
  rule.w.resize(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double z = rule.x[i];
    const double dp = boost::math::legendre_p_prime(order, z);
    rule.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_gauss_rule(order)).first;
  return it->second;
}

template <class F>
double integrate_panel(const F& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    sum += rule.w[i] * f(mid + half * rule.x[i]);
  }
  return sum * half;
}

// Panels graded with ratio 1/2 toward a point where the integrand behaves
// like dist^gamma leave a relative remainder ~ 2^{-L(1+gamma)} after L levels.
int depth_for(double gamma, double tol) {
  gamma = std::min(gamma, 3.0);
  const double g1 = std::max(1.0 + gamma, 0.05);
  const double t = std::max(tol, 1e-14);
  const int L = static_cast<int>(std::ceil(std::log2(1.0 / t) / g1)) + 2;
  return std::clamp(L, 12, 46);
}

void add_point(std::vector<double>& bps, double x, double lo, double hi) {
  if (x > lo && x < hi) bps.push_back(x);
}

// Sorted unique breakpoints covering [lo, hi]; collapses only points that are
// floating-point adjacent, so deep graded ladders survive intact.
std::vector<double> finalize_breakpoints(std::vector<double> bps, double lo, double hi) {
  bps.push_back(lo);
  bps.push_back(hi);
  std::sort(bps.begin(), bps.end());
  std::vector<double> out;
  out.reserve(bps.size());
  for (double x : bps) {
    if (x < lo || x > hi) continue;
    if (!out.empty() &&
        x - out.back() <= 8.0 * 2.220446049250313e-16 * std::max(std::abs(x), 1e-300)) {
      continue;
    }
    out.push_back(x);
  }
  if (out.empty() || out.back() < hi) out.push_back(hi);
  return out;
}

double pow_int_or_real(double base, int k) {
  // sin^{n-2} phi for small integer powers without pow() cost.
  switch (k) {
    case 0: return 1.0;
    case 1: return base;
    case 2: return base * base;
    default: return std::pow(base, k);
  }
}

double min_positive_feature(const RadialProfile& p) {
  double m = -1.0;
  for (const auto& f : p.features) {
    if (f.radius > 0.0 && (m < 0.0 || f.radius < m)) m = f.radius;
  }
  return m;
}

bool has_origin_feature(const RadialProfile& p) {
  if (p.singular_at_zero) return true;
  for (const auto& f : p.features) {
    if (f.radius == 0.0) return true;
  }
  return false;
}

/* Angular integral of the symmetric second difference over S^{n-1}:

     A(rho) = int_{S^{n-1}} [U(|x + rho w|) + U(|x - rho w|) - 2 U(r)] dw

   with |x| = r. In polar form the two displaced radii are

     d_-^2 = (r - rho)^2 + 4 r rho sin^2(phi/2)
     d_+^2 = (r - rho)^2 + 4 r rho cos^2(phi/2)

   which are exact and stable even when |r - rho| is tiny. Breakpoints are
   graded toward phi = 0 and phi = pi (where d_-, d_+ reach |r - rho|) and
   clustered at the angles where d_+- cross a profile feature radius. */
double angular_second_difference(const RadialProfile& profile, int n, double r,
                                 double rho, double Ur, const QuadratureSpec& spec) {
  const auto& U = profile.value_fn;
  if (r == 0.0) return sphere_area(n) * 2.0 * (U(rho) - Ur);

  const auto& rule = gauss_rule(spec.gauss_order);
  const double dd = r - rho;
  const double dd2 = dd * dd;
  const double frr = 4.0 * r * rho;
  const int spow = n - 2;

  auto g = [&](double phi) {
    const double sh = std::sin(0.5 * phi);
    const double ch = std::cos(0.5 * phi);
    const double dm = std::sqrt(dd2 + frr * sh * sh);
    const double dp = std::sqrt(dd2 + frr * ch * ch);
    return (U(dp) + U(dm) - 2.0 * Ur) * pow_int_or_real(std::sin(phi), spow);
  };

  std::vector<double> bps = {0.5 * kPi};

  // Geometric ladders from both ends, fine enough to resolve the smallest
  // distance scale at which the profile varies near d = |r - rho|.
  const double delta = std::abs(dd);
  double d_scale;
  if (has_origin_feature(profile)) {
    d_scale = std::max(delta, 1e-300);
  } else {
    const double fmin = min_positive_feature(profile);
    d_scale = fmin > 0.0 ? fmin : 0.5 * std::min(1.0, r + rho);
  }
  const double srr = std::sqrt(r * rho);
  const double phi_lo = std::clamp(d_scale / std::max(srr, 1e-300), 1e-13, 0.25 * kPi);
  for (double x = phi_lo; x < 0.5 * kPi; x *= 2.0) {
    add_point(bps, x, 0.0, kPi);
    add_point(bps, kPi - x, 0.0, kPi);
  }

  // Angles where d_- or d_+ cross a feature radius.
  for (const auto& feat : profile.features) {
    const double f = feat.radius;
    if (f <= 0.0) continue;
    const double f2 = f * f;
    const double denom = 2.0 * r * rho;
    const double cs[2] = {(r * r + rho * rho - f2) / denom,   // d_- crossing
                          (f2 - r * r - rho * rho) / denom};  // d_+ crossing
    for (double c : cs) {
      if (c < -1.0 || c > 1.0) continue;
      const double phic = std::acos(c);
      const double width = 0.5 * std::min(phic, kPi - phic);
      if (width <= 0.0) continue;
      const int depth = depth_for(feat.exponent, spec.tolerance);
      add_point(bps, phic, 0.0, kPi);
      for (int j = 0; j <= depth; ++j) {
        const double h = width * std::ldexp(1.0, -j);
        add_point(bps, phic - h, 0.0, kPi);
        add_point(bps, phic + h, 0.0, kPi);
      }
    }
  }

  const auto panels = finalize_breakpoints(std::move(bps), 0.0, kPi);
  if (panels.size() > 700) {
    throw QuadratureError("angular panel budget exceeded");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    sum += integrate_panel(g, panels[i], panels[i + 1], rule);
  }
  return sphere_area(n - 1) * sum;
}

struct Cluster {
  double pt = 0.0;
  double width = 0.0;
  double delta_min = 0.0;
  double gamma = 0.0;
};

// Far-field contribution of int_R^inf rho^{-1-2s} A(rho) drho under the
// requested tail mode. Beyond R the displaced terms are modeled by the power
// tail c rho^d with the O((r/rho)^2) angular moment kept:
//   int_{S^{n-1}} (d+^d + d-^d) dw ~ c rho^d S_n [2 + (r/rho)^2 d (1+(d-2)/n)].
double tail_contribution(const RadialProfile& profile, int n, double s, double r,
                         double R, double Ur, TailMode mode) {
  const double Sn = sphere_area(n);
  const double twos = 2.0 * s;
  const double Rpow = std::pow(R, -twos);
  double bracket = -Ur / twos;
  if (mode == TailMode::AnalyticPowerTail && profile.tail == TailKind::Power) {
    const double d = profile.decay_exponent;
    const double UR = profile.value_fn(R);
    bracket += UR / (twos - d);
    bracket += UR * d * (1.0 + (d - 2.0) / n) * r * r /
               (R * R * 2.0 * (twos + 2.0 - d));
  }
  // SuperPower and Compact tails contribute nothing from the displaced terms.
  return 2.0 * Sn * Rpow * bracket;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (gauss_order < 4) throw std::invalid_argument("QuadratureSpec: gauss_order must be >= 4");
  if (!(near_field_radius > 0.0)) throw std::invalid_argument("QuadratureSpec: near_field_radius must be > 0");
  if (!(truncation_radius > near_field_radius)) {
    throw std::invalid_argument("QuadratureSpec: truncation_radius must exceed near_field_radius");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("QuadratureSpec: tolerance must be > 0");
  if (max_panels < 16) throw std::invalid_argument("QuadratureSpec: max_panels too small");
}

double sphere_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double pv_radial_fraclap(const RadialProfile& profile, int n, double s, double r,
                         const QuadratureSpec& spec, bool normalized) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("pv_radial_fraclap: n must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("pv_radial_fraclap: s must lie in (0,1)");
  if (!(r >= 0.0)) throw std::invalid_argument("pv_radial_fraclap: r must be >= 0");
  if (profile.singular_at_zero && r == 0.0) {
    throw std::invalid_argument("pv_radial_fraclap: profile is singular at the origin");
  }
  const double twos = 2.0 * s;

  // Local regularity at the evaluation radius: the second difference behaves
  // like rho^{e_loc} as rho -> 0 and must beat the kernel rho^{-1-2s}.
  double e_loc = 2.0;
  for (const auto& f : profile.features) {
    if (std::abs(f.radius - r) <= 1e-12 * std::max(1.0, r)) e_loc = std::min(e_loc, f.exponent);
  }
  if (e_loc <= twos + 1e-12) {
    throw std::invalid_argument("pv_radial_fraclap: second difference not integrable at r");
  }
  for (const auto& f : profile.features) {
    if (f.radius == 0.0 && f.exponent <= -static_cast<double>(n) + 1e-12) {
      throw std::invalid_argument("pv_radial_fraclap: profile not locally integrable (sigma <= -n)");
    }
  }
  if (profile.tail == TailKind::Power && profile.decay_exponent >= twos - 1e-12) {
    throw std::invalid_argument("pv_radial_fraclap: far field not integrable (decay >= 2s)");
  }
  if (spec.tail_mode == TailMode::ZeroExtensionClosedForm && profile.tail != TailKind::Compact) {
    throw std::invalid_argument("pv_radial_fraclap: zero-extension tail needs a compact profile");
  }

  const auto& U = profile.value_fn;
  const double Ur = U(r);

  double R;  // far end of the numeric region
  if (profile.tail == TailKind::Compact) {
    R = std::max(4.0 * spec.near_field_radius, r + profile.support_radius + 1.0);
  } else {
    R = std::max(spec.truncation_radius, 32.0 * (r + 1.0));
  }

  // Diagonal clusters: radii where the integration sphere touches a feature.
  std::vector<Cluster> clusters;
  auto push_cluster = [&](double pt, double gamma) {
    if (!(pt > 0.0) || pt >= R) return;
    for (auto& c : clusters) {
      if (std::abs(c.pt - pt) <= 1e-12 * std::max(1.0, pt)) {
        c.gamma = std::min(c.gamma, gamma);
        const int depth = depth_for(c.gamma, spec.tolerance);
        c.delta_min = c.width * std::ldexp(1.0, -depth);
        return;
      }
    }
    Cluster c;
    c.pt = pt;
    c.width = 0.5 * std::min(pt, R - pt);
    c.gamma = gamma;
    c.delta_min = c.width * std::ldexp(1.0, -depth_for(gamma, spec.tolerance));
    clusters.push_back(c);
  };
  for (const auto& f : profile.features) {
    if (f.radius == 0.0) {
      // The sphere collapses onto the origin feature at rho = r.
      push_cluster(r, static_cast<double>(n - 1) + f.exponent);
    } else {
      const double gamma = (r == 0.0)
                               ? std::min(f.exponent, 2.0)
                               : 0.5 * static_cast<double>(n - 1) + std::min(f.exponent, 2.0);
      push_cluster(std::abs(r - f.radius), gamma);
      push_cluster(r + f.radius, gamma);
    }
  }

  // Inner closure scale: below eps0 the second difference is modeled by its
  // leading power rho^{e_loc}, which evades the cancellation noise floor of
  // the raw difference (amplified by eps0^{-2s}) and integrates the kernel
  // analytically. The model's residual is the next expansion order e_next, so
  // eps0 balances 1e-16 * eps^{-2s} against eps^{e_next - 2s}.
  const double Lc = std::max(r, std::min(1.0, R / 8.0));
  const double e_next = e_loc >= 2.0 ? 4.0 : e_loc + 1.0;
  const double eps_rel = std::clamp(std::pow(1e-16, 1.0 / e_next), 1e-8, 1e-3);
  double eps0 = std::min(eps_rel * Lc, R / 8.0);
  eps0 = std::max(eps0, 1e-260);
  for (const auto& c : clusters) eps0 = std::min(eps0, 0.25 * c.pt);

  std::vector<double> bps;
  for (double x = eps0; x < R; x *= 2.0) add_point(bps, x, eps0, R);
  add_point(bps, std::max(spec.near_field_radius, 2.0 * eps0), eps0, R);
  for (const auto& c : clusters) {
    add_point(bps, c.pt - c.delta_min, eps0, R);
    add_point(bps, c.pt + c.delta_min, eps0, R);
    for (double h = c.width; h > c.delta_min * 1.5; h *= 0.5) {
      add_point(bps, c.pt - h, eps0, R);
      add_point(bps, c.pt + h, eps0, R);
    }
  }
  const auto panels = finalize_breakpoints(std::move(bps), eps0, R);
  if (static_cast<int>(panels.size()) > spec.max_panels) {
    throw QuadratureError("radial panel budget exceeded; relax tolerance or raise max_panels");
  }

  auto A = [&](double rho) {
    if (n == 1) return 2.0 * (U(r + rho) + U(std::abs(r - rho)) - 2.0 * Ur);
    return angular_second_difference(profile, n, r, rho, Ur, spec);
  };
  auto integrand = [&](double rho) { return std::pow(rho, -1.0 - twos) * A(rho); };

  auto in_hole = [&](double a, double b) {
    for (const auto& c : clusters) {
      if (a >= c.pt - c.delta_min - 1e-300 && b <= c.pt + c.delta_min + 1e-300) return true;
    }
    return false;
  };

  const auto& rule = gauss_rule(spec.gauss_order);
  double I = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    if (in_hole(panels[i], panels[i + 1])) continue;
    I += integrate_panel(integrand, panels[i], panels[i + 1], rule);
  }

  // Closure over [0, eps0]: A ~ A(eps0) (rho/eps0)^{e_loc}.
  I += A(eps0) * std::pow(eps0, -twos) / (e_loc - twos);

  // Closure across each cluster hole. Near the cluster point
  //   A(rho) ~ A_reg + kappa |rho - pt|^gamma;
  // two samples per side separate the regular part from the graded one, so
  // neither is integrated with the wrong exponent.
  for (const auto& c : clusters) {
    const double kernel = std::pow(c.pt, -1.0 - twos);
    const double g1 = std::max(1.0 + c.gamma, 0.05);
    const double tg = std::pow(2.0, c.gamma) - 1.0;
    for (int side = -1; side <= 1; side += 2) {
      const double x1 = c.pt + side * c.delta_min;
      const double x2 = c.pt + side * 2.0 * c.delta_min;
      if (x1 <= eps0 || x1 >= R) continue;
      const double A1 = A(x1);
      if (std::abs(tg) < 1e-9 || x2 <= eps0 || x2 >= R) {
        I += kernel * A1 * c.delta_min;
      } else {
        const double kappa_d1g = (A(x2) - A1) / tg;  // kappa * delta_min^gamma
        I += kernel * ((A1 - kappa_d1g) * c.delta_min + kappa_d1g * c.delta_min / g1);
      }
    }
  }

  I += tail_contribution(profile, n, s, r, R, Ur, spec.tail_mode);

  double result = -0.5 * I;
  if (normalized) result *= normalization_constant(n, s, spec);
  return result == 0.0 ? 0.0 : result;
}

namespace {

// Full S^{m-1} integral of the symmetric second difference at displacement
// radius x, down to m = 1 where the sphere is the two-point set.
double angular_sd_dim(const RadialProfile& profile, int m, double r, double x,
                      double Ur, const QuadratureSpec& spec) {
  if (m == 1) {
    const auto& U = profile.value_fn;
    return 2.0 * (U(r + x) + U(std::abs(r - x)) - 2.0 * Ur);
  }
  return angular_second_difference(profile, m, r, x, Ur, spec);
}

/* Angular integral for the slab extension F(x', x_n) = U(|x'|), x' in
   R^{n-1}: splitting the sphere direction into its x'-part and its x_n-part,

     A_cyl(rho) = int_{S^{n-1}} [U(|x' + rho w'|) + U(|x' - rho w'|) - 2U(r)] dw
                = 2 int_0^{pi/2} sin^{n-2}(th) * A_{n-1}(r, rho sin th) dth,

   where A_{n-1} is the (n-1)-dimensional radial angular integral. The outer
   breakpoints cluster where rho sin(th) crosses a radius at which the inner
   integral is not smooth (the inner diagonal r and the feature images). */
double angular_second_difference_cyl(const RadialProfile& profile, int n, double r,
                                     double rho, double Ur, const QuadratureSpec& spec) {
  const auto& rule = gauss_rule(spec.gauss_order);
  const int m = n - 1;
  const int spow = n - 2;

  auto g = [&](double th) {
    return pow_int_or_real(std::sin(th), spow) *
           angular_sd_dim(profile, m, r, rho * std::sin(th), Ur, spec);
  };

  std::vector<double> bps;
  std::vector<std::pair<double, double>> inner_kinks;  // (radius, outer exponent)
  if (r > 0.0) inner_kinks.push_back({r, static_cast<double>(m)});
  for (const auto& f : profile.features) {
    const double e = 0.5 * (m - 1) + std::min(f.exponent, 2.0);
    if (f.radius == 0.0) {
      inner_kinks.push_back({r, static_cast<double>(m - 1) + f.exponent});
    } else {
      inner_kinks.push_back({std::abs(r - f.radius), e});
      inner_kinks.push_back({r + f.radius, e});
    }
  }
  for (const auto& [xstar, gamma] : inner_kinks) {
    if (!(xstar > 0.0) || xstar >= rho) continue;
    const double thc = std::asin(xstar / rho);
    const double width = 0.5 * std::min(thc, 0.5 * kPi - thc);
    add_point(bps, thc, 0.0, 0.5 * kPi);
    if (width <= 0.0) continue;
    const int depth = depth_for(gamma, spec.tolerance);
    for (int j = 0; j <= depth; ++j) {
      const double h = width * std::ldexp(1.0, -j);
      add_point(bps, thc - h, 0.0, 0.5 * kPi);
      add_point(bps, thc + h, 0.0, 0.5 * kPi);
    }
  }
  // resolve the profile's own variation scale in the swept radius rho sin(th)
  const double fmin = min_positive_feature(profile);
  const double x_scale = 0.5 * std::min(1.0, fmin > 0.0 ? fmin : std::max(r, 1.0));
  for (double x = std::clamp(x_scale / rho, 1e-13, 0.25 * kPi); x < 0.5 * kPi; x *= 2.0) {
    add_point(bps, x, 0.0, 0.5 * kPi);
  }

  const auto panels = finalize_breakpoints(std::move(bps), 0.0, 0.5 * kPi);
  if (panels.size() > 400) throw QuadratureError("angular panel budget exceeded");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    sum += integrate_panel(g, panels[i], panels[i + 1], rule);
  }
  return 2.0 * sum;
}

}  // namespace

double pv_cylindrical_fraclap(const RadialProfile& profile, int n, double s,
                              double r, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 2) throw std::invalid_argument("pv_cylindrical_fraclap: n must be >= 2");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("pv_cylindrical_fraclap: s must lie in (0,1)");
  if (!(r >= 0.0)) throw std::invalid_argument("pv_cylindrical_fraclap: r must be >= 0");
  if (profile.singular_at_zero) {
    throw std::invalid_argument("pv_cylindrical_fraclap: singular profiles unsupported");
  }
  for (const auto& f : profile.features) {
    if (std::abs(f.radius - r) <= 1e-12 * std::max(1.0, r) &&
        f.exponent <= 2.0 * s + 1e-12) {
      throw std::invalid_argument(
          "pv_cylindrical_fraclap: second difference not integrable at r");
    }
  }
  if (profile.tail == TailKind::Power && profile.decay_exponent >= 2.0 * s - 1e-12) {
    throw std::invalid_argument("pv_cylindrical_fraclap: far field not integrable");
  }
  if (profile.tail == TailKind::Power && profile.decay_exponent != 0.0 &&
      profile.decay_exponent <= -static_cast<double>(n - 1) + 1e-12) {
    throw std::invalid_argument(
        "pv_cylindrical_fraclap: power tails need decay > -(n-1) for the slab moment");
  }
  const double twos = 2.0 * s;
  const auto& U = profile.value_fn;
  const double Ur = U(r);

  double R;
  if (profile.tail == TailKind::Compact) {
    R = std::max(4.0 * spec.near_field_radius, 8.0 * (r + profile.support_radius + 1.0));
  } else {
    R = std::max(spec.truncation_radius, 32.0 * (r + 1.0));
  }

  // Radial clusters where the sweep r - rho*c first reaches zero or a feature.
  std::vector<Cluster> clusters;
  auto push_cluster = [&](double pt, double gamma) {
    if (!(pt > 0.0) || pt >= R) return;
    for (auto& c : clusters) {
      if (std::abs(c.pt - pt) <= 1e-12 * std::max(1.0, pt)) return;
    }
    Cluster c;
    c.pt = pt;
    c.width = 0.5 * std::min(pt, R - pt);
    c.gamma = gamma;
    c.delta_min = c.width * std::ldexp(1.0, -depth_for(gamma, spec.tolerance));
    clusters.push_back(c);
  };
  push_cluster(r, 1.0);
  for (const auto& f : profile.features) {
    push_cluster(std::abs(r - f.radius), 0.5 + std::min(f.exponent, 2.0));
    push_cluster(r + f.radius, 0.5 + std::min(f.exponent, 2.0));
  }

  const double Lc = std::max(r, std::min(1.0, R / 8.0));
  const double eps_rel = std::clamp(std::pow(1e-16, 0.25), 1e-8, 1e-3);
  double eps0 = std::min(eps_rel * Lc, R / 8.0);
  eps0 = std::max(eps0, 1e-260);
  for (const auto& c : clusters) eps0 = std::min(eps0, 0.25 * c.pt);

  std::vector<double> bps;
  for (double x = eps0; x < R; x *= 2.0) add_point(bps, x, eps0, R);
  for (const auto& c : clusters) {
    add_point(bps, c.pt - c.delta_min, eps0, R);
    add_point(bps, c.pt + c.delta_min, eps0, R);
    for (double h = c.width; h > c.delta_min * 1.5; h *= 0.5) {
      add_point(bps, c.pt - h, eps0, R);
      add_point(bps, c.pt + h, eps0, R);
    }
  }
  const auto panels = finalize_breakpoints(std::move(bps), eps0, R);
  if (static_cast<int>(panels.size()) > spec.max_panels) {
    throw QuadratureError("radial panel budget exceeded");
  }

  auto A = [&](double rho) {
    return angular_second_difference_cyl(profile, n, r, rho, Ur, spec);
  };
  auto integrand = [&](double rho) { return std::pow(rho, -1.0 - twos) * A(rho); };
  auto in_hole = [&](double a, double b) {
    for (const auto& c : clusters) {
      if (a >= c.pt - c.delta_min - 1e-300 && b <= c.pt + c.delta_min + 1e-300) return true;
    }
    return false;
  };

  const auto& rule = gauss_rule(spec.gauss_order);
  double I = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    if (in_hole(panels[i], panels[i + 1])) continue;
    I += integrate_panel(integrand, panels[i], panels[i + 1], rule);
  }
  I += A(eps0) * std::pow(eps0, -twos) / (2.0 - twos);
  for (const auto& c : clusters) {
    const double kernel = std::pow(c.pt, -1.0 - twos);
    const double g1 = std::max(1.0 + c.gamma, 0.05);
    const double tg = std::pow(2.0, c.gamma) - 1.0;
    for (int side = -1; side <= 1; side += 2) {
      const double x1 = c.pt + side * c.delta_min;
      const double x2 = c.pt + side * 2.0 * c.delta_min;
      if (x1 <= eps0 || x1 >= R) continue;
      const double A1 = A(x1);
      if (std::abs(tg) < 1e-9 || x2 <= eps0 || x2 >= R) {
        I += kernel * A1 * c.delta_min;
      } else {
        const double kappa_d1g = (A(x2) - A1) / tg;
        I += kernel * ((A1 - kappa_d1g) * c.delta_min + kappa_d1g * c.delta_min / g1);
      }
    }
  }

  // Far field: the displaced arguments behave like rho sin(theta), so a power
  // tail picks up the slab moment int_{S^{n-1}} |w'|^d dw. Superpower and
  // compact tails concentrate in the band |w'| < O(1/rho) around the poles
  // and reduce to the (n-1)-dimensional integral of the profile:
  //   int_{S^{n-1}} U(|x' + rho w'|) dw ~ (2/rho^{n-1}) int_{R^{n-1}} U(|w|) dw.
  {
    const double Sn = sphere_area(n);
    if (profile.tail != TailKind::Power) {
      const double cap =
          profile.tail == TailKind::Compact ? profile.support_radius : 64.0;
      std::vector<double> ib;
      for (double x = 1e-6; x < cap; x *= 2.0) ib.push_back(x);
      const auto ip = finalize_breakpoints(std::move(ib), 0.0, cap);
      auto mf = [&](double tau) { return U(tau) * pow_int_or_real(tau, n - 2); };
      double IU = 0.0;
      for (std::size_t i = 0; i + 1 < ip.size(); ++i) {
        IU += integrate_panel(mf, ip[i], ip[i + 1], rule);
      }
      // both displaced terms, integrated against the kernel beyond R
      I += 4.0 * sphere_area(n - 1) * IU * std::pow(R, -(n - 1.0) - twos) /
           (n - 1.0 + twos);
    } else {
      const double d = profile.decay_exponent;
      double moment = Sn;
      if (d != 0.0) {
        // int_{S^{n-1}} |w'|^d dw = 2 |S^{n-2}| int_0^{pi/2} sin^{n-2+d},
        // graded into the zero of sin at theta = 0 with an analytic closure
        // (the exponent may sit close to -1)
        const double g = n - 2.0 + d;
        const double floor_th = 1e-10;
        std::vector<double> mb;
        for (double h = 0.25 * kPi; h > floor_th; h *= 0.5) mb.push_back(h);
        auto mf = [&](double th) { return std::pow(std::sin(th), g); };
        const auto mp = finalize_breakpoints(std::move(mb), floor_th, 0.5 * kPi);
        moment = std::pow(floor_th, g + 1.0) / (g + 1.0);
        for (std::size_t i = 0; i + 1 < mp.size(); ++i) {
          moment += integrate_panel(mf, mp[i], mp[i + 1], rule);
        }
        moment *= 2.0 * sphere_area(n - 1);
      }
      const double coeff = U(R) * std::pow(R, -d);
      I += 2.0 * coeff * moment * std::pow(R, d - twos) / (twos - d);
    }
    I += -2.0 * Sn * Ur * std::pow(R, -twos) / twos;
  }

  const double result = -0.5 * I;
  return result == 0.0 ? 0.0 : result;
}

double angular_factor(int n, double s, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 2) throw std::invalid_argument("angular_factor: n must be >= 2");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("angular_factor: s must lie in (0,1)");
  const double g = static_cast<double>(n) - 2.0 + 2.0 * s;  // > 0 for n >= 2
  const auto& rule = gauss_rule(std::max(spec.gauss_order, 12));
  // 2 * int_0^{pi/2} cos^g, graded into the zero of cos at pi/2
  const int depth = depth_for(g, spec.tolerance);
  std::vector<double> bps;
  double h = 0.25 * kPi;
  for (int j = 0; j <= depth; ++j, h *= 0.5) bps.push_back(0.5 * kPi - h);
  const double delta = h * 2.0;
  auto f = [g](double th) { return std::pow(std::cos(th), g); };
  const auto panels = finalize_breakpoints(std::move(bps), 0.0, 0.5 * kPi - delta);
  double I = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    I += integrate_panel(f, panels[i], panels[i + 1], rule);
  }
  // closure: cos(th) ~ (pi/2 - th) near pi/2
  I += std::pow(delta, g + 1.0) / (g + 1.0);
  return 2.0 * I;
}

double normalization_constant(int n, double s, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("normalization_constant: n must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("normalization_constant: s must lie in (0,1)");
  const double a = 1.0 + 2.0 * s;
  const auto& rule = gauss_rule(std::max(spec.gauss_order, 12));

  // J = 2 int_0^inf (1 - cos t) t^{-1-2s} dt: series closure near zero,
  // pi-length panels through the oscillatory range, integration-by-parts tail.
  const double eps = 1e-2;
  double J = std::pow(eps, 2.0 - 2.0 * s) / (2.0 * (2.0 - 2.0 * s)) -
             std::pow(eps, 4.0 - 2.0 * s) / (24.0 * (4.0 - 2.0 * s)) +
             std::pow(eps, 6.0 - 2.0 * s) / (720.0 * (6.0 - 2.0 * s));
  auto jf = [a](double t) { return (1.0 - std::cos(t)) * std::pow(t, -a); };
  const int K = 2000;
  std::vector<double> bps = {eps, 1.0};
  for (double x = 2.0 * eps; x < 1.0; x *= 2.0) bps.push_back(x);
  for (int k = 1; k <= K; ++k) bps.push_back(kPi * k);
  const double T = kPi * K;
  const auto panels = finalize_breakpoints(std::move(bps), eps, T);
  if (static_cast<int>(panels.size()) > spec.max_panels) {
    throw QuadratureError("normalization_constant: panel budget exceeded");
  }
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    J += integrate_panel(jf, panels[i], panels[i + 1], rule);
  }
  // int_T^inf t^{-a} dt exactly; the cos part via two integrations by parts.
  const double sT = std::sin(T), cT = std::cos(T);
  double Icos = -std::pow(T, -a) * sT + a * std::pow(T, -a - 1.0) * cT -
                a * (a + 1.0) *
                    (-std::pow(T, -a - 2.0) * sT + (a + 2.0) * std::pow(T, -a - 3.0) * cT);
  J += std::pow(T, 1.0 - a) / (a - 1.0) - Icos;
  J *= 2.0;

  // Angular moment int_{R^{n-1}} (1+|w|^2)^{-(n+2s)/2} dw reduced to
  // int_0^{pi/2} sin^{n-2} cos^{2s}, graded at pi/2.
  double M = 1.0;
  if (n >= 2) {
    const double g = 2.0 * s;
    const int depth = depth_for(g, spec.tolerance);
    std::vector<double> mb;
    double h = 0.25 * kPi;
    for (int j = 0; j <= depth; ++j, h *= 0.5) mb.push_back(0.5 * kPi - h);
    const double delta = h * 2.0;
    auto mf = [n, g](double th) {
      return pow_int_or_real(std::sin(th), n - 2) * std::pow(std::cos(th), g);
    };
    const auto mp = finalize_breakpoints(std::move(mb), 0.0, 0.5 * kPi - delta);
    double Ith = 0.0;
    for (std::size_t i = 0; i + 1 < mp.size(); ++i) {
      Ith += integrate_panel(mf, mp[i], mp[i + 1], rule);
    }
    Ith += std::pow(delta, g + 1.0) / (g + 1.0);
    M = sphere_area(n - 1) * Ith;
  }
  return 1.0 / (J * M);
}

bool SupersolutionPair::valid() const {
  if (!(c1 > 0.0 && c2 > 0.0 && A > 0.0 && B > 0.0)) return false;
  const double n = static_cast<double>(params.n);
  if (!(2.0 * params.s * k1 < n - 2.0 * params.s)) return false;
  if (!(2.0 * params.t * k2 < n - 2.0 * params.t)) return false;
  const double bal1 = c1 * A - std::pow(B, params.p);
  const double bal2 = c2 * B - std::pow(A, params.q);
  const double s1 = std::max(std::abs(c1 * A), std::pow(B, params.p));
  const double s2 = std::max(std::abs(c2 * B), std::pow(A, params.q));
  return std::abs(bal1) <= 1e-10 * s1 && std::abs(bal2) <= 1e-10 * s2;
}

SupersolutionPair supersolution_constants(const ProblemParams& params,
                                          const QuadratureSpec& spec,
                                          bool allow_sign_violation) {
  const auto k = supersolution_exponents(params);
  const double beta1 = 2.0 * params.s * k.k1;
  const double beta2 = 2.0 * params.t * k.k2;
  const double n = static_cast<double>(params.n);
  if (beta1 >= n || beta2 >= n) {
    throw std::invalid_argument(
        "supersolution_constants: beta >= n, the defining integral diverges");
  }

  const double c1 = pv_radial_fraclap(RadialProfile::power(-beta1), params.n, params.s, 1.0, spec);
  const double c2 = pv_radial_fraclap(RadialProfile::power(-beta2), params.n, params.t, 1.0, spec);
  if (!allow_sign_violation && !(c1 > 0.0 && c2 > 0.0)) {
    throw std::domain_error(
        "supersolution_constants: c1 or c2 not positive; parameters lie outside "
        "the failing-subcriticality regime (or 2sk1 >= n-2s)");
  }

  const double exp1 = 1.0 / (params.pq() - 1.0);
  const double a1 = std::abs(c1), a2 = std::abs(c2);
  SupersolutionPair pair;
  pair.params = params;
  pair.k1 = k.k1;
  pair.k2 = k.k2;
  pair.c1 = c1;
  pair.c2 = c2;
  pair.A = std::pow(a1 * std::pow(a2, params.p), exp1);
  pair.B = std::pow(std::pow(a1, params.q) * a2, exp1);
  pair.u_profile = RadialProfile::scaled(RadialProfile::inverse_power(beta1), pair.A);
  pair.u_profile.name = "supersolution_u";
  pair.v_profile = RadialProfile::scaled(RadialProfile::inverse_power(beta2), pair.B);
  pair.v_profile.name = "supersolution_v";
  return pair;
}

}  // namespace fracsys
