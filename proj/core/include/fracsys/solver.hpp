#ifndef FRACSYS_SOLVER_HPP
#define FRACSYS_SOLVER_HPP

#include <Eigen/Cholesky>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracsys/operator.hpp"

namespace fracsys {

enum class SolveStatus { Converged, MaxIterExceeded, BlownUp, ConvergedToZero };

std::string to_string(SolveStatus s);

struct SolverConfig {
  double tol_residual = 1e-10;  // sup-norm iterate difference
  int max_iter = 10000;
  double damping = 1.0;  // 1.0 = plain Picard; 0.5 is the first fallback when it cycles
  double theta = 0.0;    // shift in H(theta, u, v)
  double blowup_threshold = 1e8;
  double init_value = 0.5;  // constant positive start
  std::optional<std::pair<GridFunction, GridFunction>> init_prescribed;
  // States below this sup norm are never reported as Converged: (0,0) is
  // always a fixed point, and slow collapses toward it would otherwise pass
  // the iterate-difference test on the way down.
  double zero_band = 1e-6;

  void validate() const;
};

struct SystemSolution {
  GridFunction u, v;
  int iterations = 0;
  double residual_u = 0.0;  // sup |As u - (v+theta)^p|
  double residual_v = 0.0;  // sup |At v - (u+theta)^q|
  SolveStatus status = SolveStatus::MaxIterExceeded;
  double sup_u = 0.0, sup_v = 0.0;
  // (sup_u, sup_v) after each iteration; entry 0 is the initial state.
  std::vector<std::pair<double, double>> iterate_trace;
};

struct EigenPair {
  double lambda1 = 0.0;
  GridFunction phi, psi;  // normalized so sup phi = 1
  double residual = 0.0;  // max sup-residual of the two eigen-equations
  int power_iterations = 0;
};

// Direct factorizations of both operator matrices, reused across solves.
class DirichletSolver {
 public:
  DirichletSolver(const OperatorMatrix& As, const OperatorMatrix& At);
  const Grid1D& grid() const { return grid_; }
  // u = As^{-1} f, v = At^{-1} g.
  std::pair<GridFunction, GridFunction> solve(const GridFunction& f,
                                              const GridFunction& g) const;
  GridFunction solve_s(const GridFunction& f) const;
  GridFunction solve_t(const GridFunction& g) const;

 private:
  Grid1D grid_;
  Eigen::LLT<Eigen::MatrixXd> llt_s_, llt_t_;
};

// The linear solution operator S(f, g): order preserving, zero maps to zero.
std::pair<GridFunction, GridFunction> dirichlet_solve(const OperatorMatrix& As,
                                                      const OperatorMatrix& At,
                                                      const GridFunction& f,
                                                      const GridFunction& g);

// T(u, v) = S(v^p, u^q), powers applied nodewise; inputs must lie in the
// nonnegative cone (values below a tiny roundoff band are rejected).
std::pair<GridFunction, GridFunction> apply_T(const OperatorMatrix& As,
                                              const OperatorMatrix& At,
                                              const GridFunction& u,
                                              const GridFunction& v, double p,
                                              double q);

// H(theta, u, v) = S((v+theta)^p, (u+theta)^q); H(0, .) = T(.).
std::pair<GridFunction, GridFunction> apply_H(const OperatorMatrix& As,
                                              const OperatorMatrix& At, double theta,
                                              const GridFunction& u,
                                              const GridFunction& v, double p,
                                              double q);

/* Damped Picard iteration
     (u,v) <- (1-damping)(u,v) + damping * H(theta, u, v)
   until the iterate difference drops below tol_residual (Converged), the sup
   norm exceeds blowup_threshold (BlownUp), the iterates collapse below 1e-14
   (ConvergedToZero: (0,0) is always a fixed point and must not be reported as
   a nontrivial solution), or max_iter is hit. */
SystemSolution solve_system(const OperatorMatrix& As, const OperatorMatrix& At,
                            double p, double q, const SolverConfig& config);

/* Principal eigenpair of the coupled linear system
     As phi = lambda1 psi,  At psi = lambda1 phi:
   power iteration on the composed inverse M = As^{-1} At^{-1} gives the
   spectral radius mu with lambda1 = mu^{-1/2}; psi = lambda1 At^{-1} phi makes
   the second equation exact and the first one's residual is the convergence
   measure. */
EigenPair principal_eigenpair(const OperatorMatrix& As, const OperatorMatrix& At,
                              const SolverConfig& config = {});

// Shift magnitude beyond which the iteration cannot stabilize, estimated from
// the eigenvalue: theta0 = max(1, (lambda1^2)^{1/(max(p,q)-1)}).
double estimate_theta0(const EigenPair& eig, double p, double q);

// A grid function carried to the rescaled frame; nodes are the mapped input
// nodes, interpolation is linear, zero outside the mapped domain.
struct RescaledFunction {
  Grid1D frame;
  Eigen::VectorXd values;
  double eval(double x) const;
};

// z(x) = lam^{beta1} u(lam x + x0), w(x) = lam^{beta2} v(lam x + x0).
// With lam = sup_u^{-1/beta1} and x0 = argmax u (leftmost tie), z(0) = 1.
std::pair<RescaledFunction, RescaledFunction> blowup_rescale(
    const GridFunction& u, const GridFunction& v, double beta1, double beta2,
    double lam, double x0);

}  // namespace fracsys

#endif
