#include "fracsys/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fracsys/util.hpp"

namespace fracsys {

void VerificationReport::finalize() {
  min_margin = std::numeric_limits<double>::infinity();
  for (double m : margins) min_margin = std::min(min_margin, m);
  if (margins.empty()) min_margin = 0.0;
  passed = min_margin >= -tolerance;
}

VerificationReport check_sign_sigma(int n, double s, double sigma,
                                    const std::vector<double>& radii,
                                    const QuadratureSpec& spec, double tolerance) {
  if (radii.empty()) throw std::invalid_argument("check_sign_sigma: no radii");
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("check_sign_sigma: radii must be > 0");
  }
  const double fundamental = -static_cast<double>(n) + 2.0 * s;
  const bool annihilation = std::abs(sigma - fundamental) <= 1e-12;
  const bool negative_range = sigma > -static_cast<double>(n) && sigma < fundamental;

  VerificationReport rep;
  rep.check_name = "sign-sigma";
  rep.params = {{"n", double(n)}, {"s", s}, {"sigma", sigma}};
  rep.sample_labels = {"r", "value"};
  rep.tolerance = tolerance >= 0.0 ? tolerance : (annihilation ? 1e-5 : 0.0);

  const RadialProfile profile =
      sigma == 0.0 ? RadialProfile::constant(1.0) : RadialProfile::power(sigma);
  for (double r : radii) {
    const double v = pv_radial_fraclap(profile, n, s, r, spec);
    rep.samples.push_back({r, v});
    if (annihilation) {
      rep.margins.push_back(-std::abs(v));
    } else if (negative_range) {
      rep.margins.push_back(-v);
    } else {
      rep.margins.push_back(v);
    }
  }
  rep.finalize();
  return rep;
}

namespace {

// Least-squares slope of log(M) vs log(r) over the given index range,
// restricted to positive M. Fewer than two usable points means the bound
// holds vacuously (slope 0).
double loglog_slope(const std::vector<double>& r, const std::vector<double>& M,
                    std::size_t from) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (std::size_t i = from; i < r.size(); ++i) {
    if (!(M[i] > 0.0)) continue;
    const double x = std::log(r[i]), y = std::log(M[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return 0.0;
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (cnt * sxy - sx * sy) / denom;
}

}  // namespace

VerificationReport check_theta_bound(int n, double s, const std::vector<double>& radii,
                                     const QuadratureSpec& spec) {
  if (!(static_cast<double>(n) > 2.0 * s)) {
    throw std::invalid_argument("check_theta_bound: requires n > 2s");
  }
  if (radii.size() < 4) throw std::invalid_argument("check_theta_bound: need >= 4 radii");
  std::vector<double> r = radii;
  std::sort(r.begin(), r.end());

  const auto theta = RadialProfile::theta(n, s);
  auto M_at = [&](double rad) {
    return std::pow(rad, n) * pv_radial_fraclap(theta, n, s, rad, spec);
  };

  VerificationReport rep;
  rep.check_name = "theta-bound";
  rep.sample_labels = {"r", "M"};
  std::vector<double> M(r.size()), M2(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    M[i] = M_at(r[i]);
    rep.samples.push_back({r[i], M[i]});
  }
  for (std::size_t i = 0; i < r.size(); ++i) M2[i] = M_at(2.0 * r[i]);

  const double C0 = *std::max_element(M.begin(), M.end());
  const double C0d = *std::max_element(M2.begin(), M2.end());
  const double slope = loglog_slope(r, M, (2 * r.size()) / 3);
  const double stability = std::abs(C0d - C0) / std::max(std::abs(C0), 1e-300);

  rep.params = {{"n", double(n)},   {"s", s},          {"C0", C0},
                {"C0_doubled", C0d}, {"tail_slope", slope}};
  rep.margins = {0.05 - slope, 0.05 - stability};
  if (!std::isfinite(C0) || !std::isfinite(C0d)) rep.margins.push_back(-1.0);
  rep.tolerance = 0.0;
  rep.finalize();
  return rep;
}

VerificationReport check_harnack_ratio(const RadialProfile& profile,
                                       const std::vector<double>& radii, double bound) {
  if (radii.empty()) throw std::invalid_argument("check_harnack_ratio: no radii");
  if (bound <= 0.0) {
    const double d = profile.tail == TailKind::Power ? profile.decay_exponent : 0.0;
    bound = std::pow(2.0, -d) + 0.1;
  }
  auto m_of = [&](double r) {
    double m = profile(r);
    for (double x : linspace(0.0, r, 512)) m = std::min(m, profile(x));
    return m;
  };

  VerificationReport rep;
  rep.check_name = "harnack-ratio";
  rep.params = {{"bound", bound}};
  rep.sample_labels = {"r", "ratio"};
  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("check_harnack_ratio: radii must be > 0");
    const double mr = m_of(r);
    const double ratio = m_of(0.5 * r) / mr;
    rep.samples.push_back({r, ratio});
    rep.margins.push_back(bound - ratio);
  }
  rep.tolerance = 0.0;
  rep.finalize();
  return rep;
}

VerificationReport check_supersolution(const SupersolutionPair& pair,
                                       const std::vector<double>& radii,
                                       const QuadratureSpec& spec, bool force,
                                       double tolerance) {
  if (!force && !pair.valid()) {
    throw std::invalid_argument(
        "check_supersolution: pair violates its invariants (pass force to run anyway)");
  }
  if (radii.empty()) throw std::invalid_argument("check_supersolution: no radii");
  const auto& P = pair.params;
  VerificationReport rep;
  rep.check_name = "supersolution";
  rep.params = {{"n", double(P.n)}, {"s", P.s}, {"t", P.t}, {"p", P.p}, {"q", P.q},
                {"k1", pair.k1},    {"k2", pair.k2}, {"c1", pair.c1}, {"c2", pair.c2},
                {"A", pair.A},      {"B", pair.B}};
  rep.sample_labels = {"r", "margin1", "margin2"};
  rep.tolerance = tolerance >= 0.0 ? tolerance : 1e-4 * std::max(pair.A, pair.B);

  for (double r : radii) {
    const double lhs1 = pv_radial_fraclap(pair.u_profile, P.n, P.s, r, spec);
    const double lhs2 = pv_radial_fraclap(pair.v_profile, P.n, P.t, r, spec);
    const double m1 = lhs1 - std::pow(pair.v_profile(r), P.p);
    const double m2 = lhs2 - std::pow(pair.u_profile(r), P.q);
    rep.samples.push_back({r, m1, m2});
    rep.margins.push_back(m1);
    rep.margins.push_back(m2);
  }
  rep.finalize();
  return rep;
}

std::vector<FSample> sample_f_inputs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // in [0,1)
  };
  std::vector<FSample> out(count);
  for (auto& s : out) {
    s.a = uniform01();
    s.b = 10.0 * uniform01();
    s.y = -10.0 + 20.0 * uniform01();
  }
  return out;
}

double f_comparison(double a, double b, double y, double alpha) {
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("f_comparison: a must lie in [0,1)");
  if (!(b >= 0.0)) throw std::invalid_argument("f_comparison: b must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("f_comparison: alpha must be > 0");
  const double y2 = y * y;
  const double plus = std::sqrt((a + b) * (a + b) + y2);
  const double minus = std::sqrt((a - b) * (a - b) + y2);
  return std::pow(1.0 - a + plus, -2.0 * alpha) + std::pow(1.0 - a + minus, -2.0 * alpha) -
         std::pow((1.0 + b) * (1.0 + b) + y2, -alpha) -
         std::pow((1.0 - b) * (1.0 - b) + y2, -alpha);
}

VerificationReport check_f_inequality(double alpha, const std::vector<FSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("check_f_inequality: no samples");
  const std::size_t N = samples.size();
  std::vector<double> fvals(N), fds(N);
  parallel_for(N, [&](std::size_t i) {
    const auto& smp = samples[i];
    fvals[i] = f_comparison(smp.a, smp.b, smp.y, alpha);
    const double h = std::min(1e-6, 0.25 * (1.0 - smp.a));
    if (smp.a >= h && smp.a + h < 1.0) {
      fds[i] = (f_comparison(smp.a + h, smp.b, smp.y, alpha) -
                f_comparison(smp.a - h, smp.b, smp.y, alpha)) /
               (2.0 * h);
    } else {
      fds[i] = (f_comparison(smp.a + h, smp.b, smp.y, alpha) - fvals[i]) / h;
    }
  });

  VerificationReport rep;
  rep.check_name = "f-inequality";
  rep.params = {{"alpha", alpha}, {"sample_count", double(N)}};
  rep.sample_labels = {"a", "b", "y", "f", "df_da"};
  rep.margins.reserve(2 * N);
  for (std::size_t i = 0; i < N; ++i) rep.margins.push_back(-fvals[i]);
  for (std::size_t i = 0; i < N; ++i) rep.margins.push_back(fds[i] + 1e-6);
  // keep the worst few samples in the report rather than all of them
  std::vector<std::size_t> idx(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a_, std::size_t b_) {
    return fvals[a_] > fvals[b_] || (fvals[a_] == fvals[b_] && a_ < b_);
  });
  for (std::size_t k = 0; k < std::min<std::size_t>(10, N); ++k) {
    const auto& smp = samples[idx[k]];
    rep.samples.push_back({smp.a, smp.b, smp.y, fvals[idx[k]], fds[idx[k]]});
  }
  rep.tolerance = 1e-12;
  rep.finalize();
  return rep;
}

VerificationReport check_dimension_reduction(const RadialProfile& profile, int n,
                                             double s, const std::vector<double>& radii,
                                             const QuadratureSpec& spec, double rel_tol) {
  if (n < 2) throw std::invalid_argument("check_dimension_reduction: n must be >= 2");
  if (radii.empty()) throw std::invalid_argument("check_dimension_reduction: no radii");
  const double factor = angular_factor(n, s, spec);

  VerificationReport rep;
  rep.check_name = "dimension-reduction";
  rep.params = {{"n", double(n)}, {"s", s}, {"angular_factor", factor}, {"rel_tol", rel_tol}};
  rep.sample_labels = {"r", "ndim", "factor_times_lower"};
  for (double r : radii) {
    const double lhs = pv_cylindrical_fraclap(profile, n, s, r, spec);
    const double rhs = factor * pv_radial_fraclap(profile, n - 1, s, r, spec);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-12});
    rep.samples.push_back({r, lhs, rhs});
    rep.margins.push_back(rel_tol - std::abs(lhs - rhs) / scale);
  }
  rep.tolerance = 0.0;
  rep.finalize();
  return rep;
}

}  // namespace fracsys
