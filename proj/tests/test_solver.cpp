#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "fracsys/exponents.hpp"
#include "fracsys/operator.hpp"
#include "fracsys/quadrature.hpp"
#include "fracsys/solver.hpp"

using namespace fracsys;

namespace {

struct Setup {
  Grid1D grid;
  OperatorMatrix As, At;
};

Setup make_setup(double s, double t, int cells) {
  Setup st{Grid1D::make(-1.0, 1.0, cells), {}, {}};
  st.As = assemble_operator(st.grid, s);
  st.At = assemble_operator(st.grid, t);
  return st;
}

}  // namespace

TEST_CASE("dirichlet solve: zero data, symmetry, bump oracle") {
  const auto st = make_setup(0.5, 0.5, 512);
  const auto& g = st.grid;

  auto [u0, v0] = dirichlet_solve(st.As, st.At, GridFunction::zeros(g), GridFunction::zeros(g));
  CHECK(u0.sup_norm() == 0.0);
  CHECK(v0.sup_norm() == 0.0);

  auto [u1, v1] =
      dirichlet_solve(st.As, st.At, GridFunction::constant(g, 1.0), GridFunction::constant(g, 1.0));
  CHECK((u1.values - v1.values).cwiseAbs().maxCoeff() == 0.0);
  const int m = g.interior_count();
  for (int i = 0; i < m / 2; ++i) {
    CHECK(u1.values[i] == doctest::Approx(u1.values[m - 1 - i]).epsilon(1e-12));
  }

  // f = the interior constant of the bounded-domain profile => u ~ profile
  QuadratureSpec spec;
  const auto bump = RadialProfile::bump(0.5);
  const double lam = pv_radial_fraclap(bump, 1, 0.5, 0.0, spec);
  auto [ub, vb] =
      dirichlet_solve(st.As, st.At, GridFunction::constant(g, lam), GridFunction::zeros(g));
  CHECK(vb.sup_norm() == 0.0);
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    worst = std::max(worst, std::abs(ub.values[i] - bump(std::abs(g.node(i)))));
  }
  CHECK(worst / ub.sup_norm() < 2e-2);
}

TEST_CASE("T and H: base point, nodewise powers, monotonicity, cone guard") {
  const auto st = make_setup(0.5, 0.5, 64);
  const auto& g = st.grid;

  auto [tz_u, tz_v] =
      apply_T(st.As, st.At, GridFunction::zeros(g), GridFunction::zeros(g), 2.0, 2.0);
  CHECK(tz_u.sup_norm() == 0.0);
  CHECK(tz_v.sup_norm() == 0.0);

  // T(u,v) literally equals S(v^p, u^q) with nodewise powers
  auto u = GridFunction::zeros(g);
  u.values[5] = 2.0;
  auto v = GridFunction::constant(g, 0.3);
  const double p = 2.0, q = 3.0;
  auto [Tu, Tv] = apply_T(st.As, st.At, u, v, p, q);
  auto f = GridFunction::zeros(g);
  auto h = GridFunction::zeros(g);
  for (int i = 0; i < g.interior_count(); ++i) {
    f.values[i] = std::pow(v.values[i], p);
    h.values[i] = std::pow(u.values[i], q);
  }
  CHECK(h.values[5] == 8.0);
  auto [Su, Sv] = dirichlet_solve(st.As, st.At, f, h);
  CHECK((Tu.values - Su.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((Tv.values - Sv.values).cwiseAbs().maxCoeff() == 0.0);

  // monotonicity of T on the cone
  std::mt19937_64 rng(4242);
  auto rnd01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 25; ++trial) {
    auto a1 = GridFunction::zeros(g), b1 = GridFunction::zeros(g);
    auto a2 = GridFunction::zeros(g), b2 = GridFunction::zeros(g);
    for (int i = 0; i < g.interior_count(); ++i) {
      a1.values[i] = rnd01();
      b1.values[i] = rnd01();
      a2.values[i] = a1.values[i] + rnd01();
      b2.values[i] = b1.values[i] + rnd01();
    }
    auto [x1, y1] = apply_T(st.As, st.At, a1, b1, 1.5, 2.5);
    auto [x2, y2] = apply_T(st.As, st.At, a2, b2, 1.5, 2.5);
    CHECK((x2.values - x1.values).minCoeff() >= -1e-12);
    CHECK((y2.values - y1.values).minCoeff() >= -1e-12);
  }

  // H(0, .) == T(.)
  auto [h0u, h0v] = apply_H(st.As, st.At, 0.0, u, v, p, q);
  CHECK((h0u.values - Tu.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((h0v.values - Tv.values).cwiseAbs().maxCoeff() == 0.0);

  // theta > 0 at the origin of the cone is strictly positive everywhere
  auto [hpu, hpv] =
      apply_H(st.As, st.At, 1.0, GridFunction::zeros(g), GridFunction::zeros(g), p, q);
  CHECK(hpu.min_value() > 0.0);
  CHECK(hpv.min_value() > 0.0);

  // nondecreasing in theta
  auto [h2u, h2v] = apply_H(st.As, st.At, 2.0, u, v, p, q);
  auto [h1u, h1v] = apply_H(st.As, st.At, 1.0, u, v, p, q);
  CHECK((h2u.values - h1u.values).minCoeff() >= -1e-12);
  CHECK((h2v.values - h1v.values).minCoeff() >= -1e-12);

  // cone violation rejected
  auto neg = GridFunction::constant(g, -0.5);
  CHECK_THROWS_AS(apply_T(st.As, st.At, neg, v, p, q), std::invalid_argument);
}

TEST_CASE("order preservation of the linear solve") {
  const auto st = make_setup(0.4, 0.7, 64);
  DirichletSolver solver(st.As, st.At);
  std::mt19937_64 rng(2024);
  auto rnd01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 100; ++trial) {
    auto f1 = GridFunction::zeros(st.grid), f2 = GridFunction::zeros(st.grid);
    for (int i = 0; i < st.grid.interior_count(); ++i) {
      f1.values[i] = rnd01();
      f2.values[i] = f1.values[i] + rnd01();
    }
    const auto u1 = solver.solve_s(f1);
    const auto u2 = solver.solve_s(f2);
    CHECK((u2.values - u1.values).minCoeff() >= -1e-12 * u2.sup_norm());
  }
}

TEST_CASE("solve_system: symmetric collapse to zero and its stability") {
  SolverConfig cfg;  // init 0.5, theta 0, tol 1e-10
  const auto a = make_setup(0.5, 0.5, 128);
  const auto sol = solve_system(a.As, a.At, 2.0, 2.0, cfg);
  CHECK((sol.status == SolveStatus::Converged || sol.status == SolveStatus::ConvergedToZero));
  CHECK(sol.status == SolveStatus::ConvergedToZero);
  // symmetry: u_k == v_k at every iteration
  CHECK((sol.u.values - sol.v.values).cwiseAbs().maxCoeff() <= 1e-10);
  for (const auto& [su, sv] : sol.iterate_trace) CHECK(su == sv);

  // status stable under doubling cells and max_iter
  SolverConfig cfg2 = cfg;
  cfg2.max_iter *= 2;
  const auto b = make_setup(0.5, 0.5, 256);
  const auto sol2 = solve_system(b.As, b.At, 2.0, 2.0, cfg2);
  CHECK(sol2.status == sol.status);
}

TEST_CASE("solve_system: small init collapses, iterates stay in the cone") {
  SolverConfig cfg;
  cfg.init_value = 1e-6;
  const auto a = make_setup(0.5, 0.5, 128);
  const auto sol = solve_system(a.As, a.At, 2.0, 2.0, cfg);
  CHECK(sol.status == SolveStatus::ConvergedToZero);
  CHECK(sol.u.min_value() >= 0.0);
  CHECK(sol.v.min_value() >= 0.0);
  for (const auto& [su, sv] : sol.iterate_trace) {
    CHECK(su >= 0.0);
    CHECK(sv >= 0.0);
  }
}

TEST_CASE("solve_system: converged positive solution for a moderate shift") {
  SolverConfig cfg;
  cfg.theta = 0.4;
  cfg.init_value = 0.0;
  const auto a = make_setup(0.5, 0.5, 128);
  const auto sol = solve_system(a.As, a.At, 2.0, 2.0, cfg);
  REQUIRE(sol.status == SolveStatus::Converged);
  CHECK(sol.residual_u <= cfg.tol_residual);
  CHECK(sol.residual_v <= cfg.tol_residual);
  CHECK(sol.u.min_value() > 0.0);
  CHECK(sol.v.min_value() > 0.0);
  // converged states are fixed points of H
  auto [Hu, Hv] = apply_H(a.As, a.At, cfg.theta, sol.u, sol.v, 2.0, 2.0);
  const double gap = std::max((Hu.values - sol.u.values).cwiseAbs().maxCoeff(),
                              (Hv.values - sol.v.values).cwiseAbs().maxCoeff());
  CHECK(gap <= 10.0 * cfg.tol_residual);
  // cone invariance along the whole iteration
  for (const auto& [su, sv] : sol.iterate_trace) {
    CHECK(su >= 0.0);
    CHECK(sv >= 0.0);
  }
}

TEST_CASE("solve_system: iteration is deterministic") {
  SolverConfig cfg;
  cfg.max_iter = 50;
  const auto a = make_setup(0.3, 0.8, 64);
  const auto s1 = solve_system(a.As, a.At, 1.5, 2.0, cfg);
  const auto s2 = solve_system(a.As, a.At, 1.5, 2.0, cfg);
  REQUIRE(s1.iterate_trace.size() == s2.iterate_trace.size());
  for (std::size_t i = 0; i < s1.iterate_trace.size(); ++i) {
    CHECK(s1.iterate_trace[i] == s2.iterate_trace[i]);
  }
}

TEST_CASE("large shift forces blow-up with a growing trace tail") {
  const auto a = make_setup(0.5, 0.5, 128);
  const auto eig = principal_eigenpair(a.As, a.At);
  const double theta0 = estimate_theta0(eig, 2.0, 2.0);
  CHECK(theta0 >= 1.0);
  SolverConfig cfg;
  cfg.theta = 10.0 * theta0;
  const auto sol = solve_system(a.As, a.At, 2.0, 2.0, cfg);
  CHECK((sol.status == SolveStatus::BlownUp || sol.status == SolveStatus::MaxIterExceeded));
  const auto& tr = sol.iterate_trace;
  REQUIRE(tr.size() >= 3);
  const std::size_t tail = std::min<std::size_t>(10, tr.size() - 1);
  for (std::size_t i = tr.size() - tail; i < tr.size(); ++i) {
    CHECK(std::max(tr[i].first, tr[i].second) >
          std::max(tr[i - 1].first, tr[i - 1].second));
  }
}

TEST_CASE("principal eigenpair against a dense symmetric eigensolve") {
  const auto a = make_setup(0.5, 0.5, 256);
  const auto eig = principal_eigenpair(a.As, a.At);
  CHECK(eig.lambda1 > 0.0);
  CHECK(eig.residual <= 1e-8);
  CHECK(eig.phi.min_value() >= 0.0);
  CHECK(eig.psi.min_value() >= 0.0);
  CHECK(eig.phi.sup_norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((eig.phi.values - eig.psi.values).cwiseAbs().maxCoeff() <= 1e-8);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.As.entries);
  const double lmin = es.eigenvalues().minCoeff();
  CHECK(std::abs(eig.lambda1 - lmin) / lmin < 1e-6);

  // refinement moves lambda1 by less than 1%
  const auto b = make_setup(0.5, 0.5, 512);
  const auto eig2 = principal_eigenpair(b.As, b.At);
  CHECK(std::abs(eig2.lambda1 - eig.lambda1) / eig.lambda1 < 0.01);
}

TEST_CASE("eigenpair with distinct orders satisfies both equations") {
  const auto a = make_setup(0.3, 0.7, 128);
  const auto eig = principal_eigenpair(a.As, a.At);
  CHECK(eig.lambda1 > 0.0);
  CHECK(eig.residual <= 1e-8);
  CHECK(eig.phi.min_value() >= 0.0);
  CHECK(eig.psi.min_value() >= 0.0);
}

TEST_CASE("blow-up rescaling") {
  const auto a = make_setup(0.5, 0.5, 128);
  const auto eig = principal_eigenpair(a.As, a.At);
  const auto params = ProblemParams::make(1, 0.5, 0.5, 2.0, 2.0);
  const auto rep = classify_exponents(params);

  SUBCASE("identity frame") {
    auto [z, w] = blowup_rescale(eig.phi, eig.psi, rep.beta1, rep.beta2, 1.0, 0.0);
    for (int i = 0; i < a.grid.interior_count(); ++i) {
      CHECK(z.eval(a.grid.node(i)) == doctest::Approx(eig.phi.values[i]).epsilon(1e-14));
    }
  }
  SUBCASE("maximum normalization") {
    const double sup = eig.phi.sup_norm();
    const double lam = std::pow(sup, -1.0 / rep.beta1);
    const double x0 = a.grid.node(eig.phi.argmax_node());
    auto [z, w] = blowup_rescale(eig.phi, eig.psi, rep.beta1, rep.beta2, lam, x0);
    CHECK(std::abs(z.eval(0.0) - 1.0) <= 1e-12);
  }
  SUBCASE("theta-free exponent combinations vanish") {
    for (double lam : {0.5, 2.0, 7.3}) {
      const double e1 = (2 * params.s + rep.beta1 - params.p * rep.beta2) / params.p;
      const double e2 = (2 * params.t + rep.beta2 - params.q * rep.beta1) / params.q;
      CHECK(std::abs(std::pow(lam, e1) - 1.0) <= 1e-12);
      CHECK(std::abs(std::pow(lam, e2) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("x0 outside the domain is rejected") {
    CHECK_THROWS_AS(blowup_rescale(eig.phi, eig.psi, rep.beta1, rep.beta2, 1.0, 2.0),
                    std::invalid_argument);
  }
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.damping = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.theta = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.tol_residual = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
