#ifndef FRACSYS_OPERATOR_HPP
#define FRACSYS_OPERATOR_HPP

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>

#include "fracsys/quadrature.hpp"

namespace fracsys {

// Uniform mesh on [left, right]; the unknowns live at the interior nodes,
// the exterior (including the endpoints) carries identically zero data.
struct Grid1D {
  double left = -1.0;
  double right = 1.0;
  int n_cells = 8;

  static Grid1D make(double left, double right, int n_cells);

  double spacing() const { return (right - left) / n_cells; }
  int interior_count() const { return n_cells - 1; }
  // Interior node i, i in [0, interior_count): left + (i+1) h.
  double node(int i) const { return left + spacing() * (i + 1); }
  bool same(const Grid1D& o) const {
    return left == o.left && right == o.right && n_cells == o.n_cells;
  }
};

struct GridFunction {
  Grid1D grid;
  Eigen::VectorXd values;  // interior node values; zero outside by convention

  static GridFunction zeros(const Grid1D& g);
  static GridFunction constant(const Grid1D& g, double c);
  static GridFunction sample(const Grid1D& g, const std::function<double(double)>& f);

  double sup_norm() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
  double min_value() const { return values.size() ? values.minCoeff() : 0.0; }
  // Piecewise-linear interpolation through the nodes, zero outside [left,right].
  double eval(double x) const;
  // Leftmost node attaining the maximum value.
  int argmax_node() const;
};

/* Dense collocation matrix for (-Delta)^s on the grid with zero exterior.

   Writing the operator through the one-sided second difference
   D_i(tau) = u(x_i + tau) + u(x_i - tau) - 2 u(x_i),

     (-Delta)^s u(x_i) = - int_0^inf D_i(tau) tau^{-1-2s} dtau,

   D_i is interpolated piecewise-linearly through its nodal values
   D_i(kh) = u_{i+k} + u_{i-k} - 2 u_i (zero-extended) and integrated against
   the kernel in closed form panel by panel; on the first cell D_i is modeled
   by its quadratic leading term, which keeps the weight finite for s >= 1/2.
   Off-diagonal entries are -W_k <= 0 and depend only on |i-j|; the exterior
   kernel mass enters the diagonal, so rows sum to a positive quantity and the
   matrix is a symmetric M-matrix. */
struct OperatorMatrix {
  double s = 0.5;
  Grid1D grid;
  Eigen::MatrixXd entries;
  // Exterior kernel mass per node: ((x_i-left)^{-2s} + (right-x_i)^{-2s})/(2s).
  Eigen::VectorXd tail_diagonal;
};

OperatorMatrix assemble_operator(const Grid1D& grid, double s,
                                 const QuadratureSpec& spec = {});

GridFunction apply(const OperatorMatrix& m, const GridFunction& f);

// One row per line, entries as shortest round-trip decimals, space-separated.
void export_matrix_text(const OperatorMatrix& m, std::ostream& out);

}  // namespace fracsys

#endif
