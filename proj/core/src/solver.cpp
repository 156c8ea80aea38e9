#include "fracsys/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsys {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterExceeded: return "MaxIterExceeded";
    case SolveStatus::BlownUp: return "BlownUp";
    case SolveStatus::ConvergedToZero: return "ConvergedToZero";
  }
  return "Unknown";
}

void SolverConfig::validate() const {
  if (!(tol_residual > 0.0)) throw std::invalid_argument("SolverConfig: tol_residual must be > 0");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw std::invalid_argument("SolverConfig: damping must lie in (0,1]");
  }
  if (theta < 0.0) throw std::invalid_argument("SolverConfig: theta must be >= 0");
  if (!(blowup_threshold > 0.0)) {
    throw std::invalid_argument("SolverConfig: blowup_threshold must be > 0");
  }
}

DirichletSolver::DirichletSolver(const OperatorMatrix& As, const OperatorMatrix& At)
    : grid_(As.grid) {
  if (!As.grid.same(At.grid)) throw std::invalid_argument("DirichletSolver: grid mismatch");
  llt_s_.compute(As.entries);
  llt_t_.compute(At.entries);
  if (llt_s_.info() != Eigen::Success || llt_t_.info() != Eigen::Success) {
    throw std::runtime_error("DirichletSolver: factorization failed (matrix not SPD)");
  }
}

GridFunction DirichletSolver::solve_s(const GridFunction& f) const {
  if (!f.grid.same(grid_)) throw std::invalid_argument("solve_s: grid mismatch");
  return GridFunction{grid_, llt_s_.solve(f.values)};
}

GridFunction DirichletSolver::solve_t(const GridFunction& g) const {
  if (!g.grid.same(grid_)) throw std::invalid_argument("solve_t: grid mismatch");
  return GridFunction{grid_, llt_t_.solve(g.values)};
}

std::pair<GridFunction, GridFunction> DirichletSolver::solve(const GridFunction& f,
                                                             const GridFunction& g) const {
  return {solve_s(f), solve_t(g)};
}

std::pair<GridFunction, GridFunction> dirichlet_solve(const OperatorMatrix& As,
                                                      const OperatorMatrix& At,
                                                      const GridFunction& f,
                                                      const GridFunction& g) {
  DirichletSolver solver(As, At);
  return solver.solve(f, g);
}

namespace {

// Nodewise (x + shift)^e on cone data. Values inside a tiny roundoff band
// below zero are treated as zero; anything further negative is outside the
// cone and rejected.
Eigen::VectorXd cone_power(const Eigen::VectorXd& x, double shift, double e) {
  const double band = 1e-12 * std::max(1.0, x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double v = x[i];
    if (v < 0.0) {
      if (v < -band) throw std::invalid_argument("cone violation: negative input to power map");
      v = 0.0;
    }
    out[i] = std::pow(v + shift, e);
  }
  return out;
}

void clamp_tiny_negatives(Eigen::VectorXd& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) x[i] = 0.0;
  }
}

}  // namespace

std::pair<GridFunction, GridFunction> apply_H(const OperatorMatrix& As,
                                              const OperatorMatrix& At, double theta,
                                              const GridFunction& u,
                                              const GridFunction& v, double p,
                                              double q) {
  if (theta < 0.0) throw std::invalid_argument("apply_H: theta must be >= 0");
  if (!u.grid.same(v.grid)) throw std::invalid_argument("apply_H: grid mismatch");
  GridFunction f{u.grid, cone_power(v.values, theta, p)};
  GridFunction g{u.grid, cone_power(u.values, theta, q)};
  return dirichlet_solve(As, At, f, g);
}

std::pair<GridFunction, GridFunction> apply_T(const OperatorMatrix& As,
                                              const OperatorMatrix& At,
                                              const GridFunction& u,
                                              const GridFunction& v, double p,
                                              double q) {
  return apply_H(As, At, 0.0, u, v, p, q);
}

SystemSolution solve_system(const OperatorMatrix& As, const OperatorMatrix& At,
                            double p, double q, const SolverConfig& config) {
  config.validate();
  DirichletSolver solver(As, At);
  const Grid1D& grid = solver.grid();

  GridFunction u = config.init_prescribed ? config.init_prescribed->first
                                          : GridFunction::constant(grid, config.init_value);
  GridFunction v = config.init_prescribed ? config.init_prescribed->second
                                          : GridFunction::constant(grid, config.init_value);
  if (!u.grid.same(grid) || !v.grid.same(grid)) {
    throw std::invalid_argument("solve_system: prescribed init on wrong grid");
  }
  if (u.min_value() < 0.0 || v.min_value() < 0.0) {
    throw std::invalid_argument("solve_system: init must lie in the nonnegative cone");
  }

  SystemSolution out;
  out.iterate_trace.emplace_back(u.sup_norm(), v.sup_norm());

  const double d = config.damping;
  SolveStatus status = SolveStatus::MaxIterExceeded;
  int iter = 0;
  for (iter = 1; iter <= config.max_iter; ++iter) {
    GridFunction fu{grid, cone_power(v.values, config.theta, p)};
    GridFunction fv{grid, cone_power(u.values, config.theta, q)};
    Eigen::VectorXd hu = solver.solve_s(fu).values;
    Eigen::VectorXd hv = solver.solve_t(fv).values;
    Eigen::VectorXd u1 = (1.0 - d) * u.values + d * hu;
    Eigen::VectorXd v1 = (1.0 - d) * v.values + d * hv;
    clamp_tiny_negatives(u1);
    clamp_tiny_negatives(v1);

    const double diff = std::max((u1 - u.values).cwiseAbs().maxCoeff(),
                                 (v1 - v.values).cwiseAbs().maxCoeff());
    u.values = std::move(u1);
    v.values = std::move(v1);
    const double su = u.sup_norm(), sv = v.sup_norm();
    out.iterate_trace.emplace_back(su, sv);

    if (std::max(su, sv) > config.blowup_threshold) {
      status = SolveStatus::BlownUp;
      break;
    }
    if (std::max(su, sv) < 1e-14) {
      status = SolveStatus::ConvergedToZero;
      break;
    }
    if (diff <= config.tol_residual && std::max(su, sv) > config.zero_band) {
      // accept only a state that satisfies the equations themselves, not just
      // one that has stopped moving
      const double ru =
          (As.entries * u.values - cone_power(v.values, config.theta, p)).cwiseAbs().maxCoeff();
      const double rv =
          (At.entries * v.values - cone_power(u.values, config.theta, q)).cwiseAbs().maxCoeff();
      if (ru <= config.tol_residual && rv <= config.tol_residual) {
        status = SolveStatus::Converged;
        break;
      }
    }
  }

  out.u = u;
  out.v = v;
  out.status = status;
  out.iterations = std::min(iter, config.max_iter);
  out.sup_u = u.sup_norm();
  out.sup_v = v.sup_norm();
  // Equation residuals of the terminal state.
  {
    Eigen::VectorXd rhs_u = cone_power(v.values, config.theta, p);
    Eigen::VectorXd rhs_v = cone_power(u.values, config.theta, q);
    out.residual_u = (As.entries * u.values - rhs_u).cwiseAbs().maxCoeff();
    out.residual_v = (At.entries * v.values - rhs_v).cwiseAbs().maxCoeff();
  }
  return out;
}

EigenPair principal_eigenpair(const OperatorMatrix& As, const OperatorMatrix& At,
                              const SolverConfig& config) {
  config.validate();
  DirichletSolver solver(As, At);
  const Grid1D& grid = solver.grid();
  const int m = grid.interior_count();

  Eigen::VectorXd x = Eigen::VectorXd::Constant(m, 1.0);
  double mu = 0.0;
  int iter = 0;
  const int max_iter = std::max(config.max_iter, 1000);
  bool converged = false;
  for (iter = 1; iter <= max_iter; ++iter) {
    Eigen::VectorXd z = solver.solve_t(GridFunction{grid, x}).values;
    Eigen::VectorXd y = solver.solve_s(GridFunction{grid, z}).values;
    const double mu_new = y.cwiseAbs().maxCoeff();
    Eigen::VectorXd x_new = y / mu_new;
    const double dx = (x_new - x).cwiseAbs().maxCoeff();
    const double dmu = std::abs(mu_new - mu);
    x = std::move(x_new);
    mu = mu_new;
    if (iter > 2 && dx <= 1e-13 && dmu <= 1e-13 * mu) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw std::runtime_error("principal_eigenpair: power iteration stagnated");
  }

  const double lambda1 = 1.0 / std::sqrt(mu);
  GridFunction phi{grid, x};
  // normalize sup phi = 1 on the signed maximum (the Perron vector is >= 0)
  phi.values /= phi.values.maxCoeff();
  clamp_tiny_negatives(phi.values);
  GridFunction psi{grid, lambda1 * solver.solve_t(phi).values};
  clamp_tiny_negatives(psi.values);

  EigenPair out;
  out.lambda1 = lambda1;
  out.residual = std::max(
      (As.entries * phi.values - lambda1 * psi.values).cwiseAbs().maxCoeff(),
      (At.entries * psi.values - lambda1 * phi.values).cwiseAbs().maxCoeff());
  out.phi = std::move(phi);
  out.psi = std::move(psi);
  out.power_iterations = iter;
  return out;
}

double estimate_theta0(const EigenPair& eig, double p, double q) {
  const double pm = std::max(p, q);
  if (!(pm > 1.0)) {
    throw std::invalid_argument("estimate_theta0: requires p > 1 or q > 1");
  }
  return std::max(1.0, std::pow(eig.lambda1 * eig.lambda1, 1.0 / (pm - 1.0)));
}

double RescaledFunction::eval(double x) const {
  if (x <= frame.left || x >= frame.right) return 0.0;
  const double h = frame.spacing();
  const double u = (x - frame.left) / h;
  int cell = static_cast<int>(std::floor(u));
  cell = std::min(cell, frame.n_cells - 1);
  const double frac = u - cell;
  auto at = [&](int node_index) {
    if (node_index <= 0 || node_index >= frame.n_cells) return 0.0;
    return values[node_index - 1];
  };
  return (1.0 - frac) * at(cell) + frac * at(cell + 1);
}

std::pair<RescaledFunction, RescaledFunction> blowup_rescale(
    const GridFunction& u, const GridFunction& v, double beta1, double beta2,
    double lam, double x0) {
  if (!(lam > 0.0)) throw std::invalid_argument("blowup_rescale: lam must be > 0");
  if (!u.grid.same(v.grid)) throw std::invalid_argument("blowup_rescale: grid mismatch");
  if (!(x0 > u.grid.left && x0 < u.grid.right)) {
    throw std::invalid_argument("blowup_rescale: x0 outside the domain");
  }
  Grid1D frame;
  frame.left = (u.grid.left - x0) / lam;
  frame.right = (u.grid.right - x0) / lam;
  frame.n_cells = u.grid.n_cells;

  RescaledFunction z{frame, std::pow(lam, beta1) * u.values};
  RescaledFunction w{frame, std::pow(lam, beta2) * v.values};
  return {std::move(z), std::move(w)};
}

}  // namespace fracsys
