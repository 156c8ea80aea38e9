#include "fracsys/operator.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fracsys/util.hpp"

namespace fracsys {

Grid1D Grid1D::make(double left, double right, int n_cells) {
  if (!(left < right)) throw std::invalid_argument("Grid1D: left must be < right");
  if (n_cells < 8) throw std::invalid_argument("Grid1D: n_cells must be >= 8");
  return Grid1D{left, right, n_cells};
}

GridFunction GridFunction::zeros(const Grid1D& g) {
  return GridFunction{g, Eigen::VectorXd::Zero(g.interior_count())};
}

GridFunction GridFunction::constant(const Grid1D& g, double c) {
  return GridFunction{g, Eigen::VectorXd::Constant(g.interior_count(), c)};
}

GridFunction GridFunction::sample(const Grid1D& g, const std::function<double(double)>& f) {
  GridFunction out = zeros(g);
  for (int i = 0; i < g.interior_count(); ++i) out.values[i] = f(g.node(i));
  return out;
}

double GridFunction::eval(double x) const {
  if (x <= grid.left || x >= grid.right) return 0.0;
  const double h = grid.spacing();
  const double u = (x - grid.left) / h;  // in (0, n_cells)
  int cell = static_cast<int>(std::floor(u));
  cell = std::min(cell, grid.n_cells - 1);
  const double frac = u - cell;
  auto at = [&](int node_index) {  // node_index in grid numbering 0..n_cells
    if (node_index <= 0 || node_index >= grid.n_cells) return 0.0;
    return values[node_index - 1];
  };
  return (1.0 - frac) * at(cell) + frac * at(cell + 1);
}

int GridFunction::argmax_node() const {
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

OperatorMatrix assemble_operator(const Grid1D& grid, double s, const QuadratureSpec& spec) {
  spec.validate();
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("assemble_operator: s must lie in (0,1)");
  const int N = grid.n_cells;
  const int m = grid.interior_count();
  const double h = grid.spacing();
  const double twos = 2.0 * s;
  const double hpow = std::pow(h, -twos);

  // Exact panel integrals in the scaled variable sigma = tau/h:
  //   J0(k) = int_k^{k+1} sigma^{-1-2s},  J1(k) = int_k^{k+1} sigma^{-2s}.
  auto J0 = [&](double k) {
    return (std::pow(k, -twos) - std::pow(k + 1.0, -twos)) / twos;
  };
  auto J1 = [&](double k) {
    if (std::abs(1.0 - twos) < 1e-12) return std::log((k + 1.0) / k);
    return (std::pow(k + 1.0, 1.0 - twos) - std::pow(k, 1.0 - twos)) / (1.0 - twos);
  };

  // W[k] multiplies D_i(kh); the first cell carries the quadratic model mass.
  std::vector<double> a(N + 2), b(N + 2), W(N + 2);
  for (int k = 1; k <= N + 1; ++k) {
    const double kd = k;
    a[k] = (kd + 1.0) * J0(kd) - J1(kd);
    b[k] = J1(kd) - kd * J0(kd);
  }
  W[1] = 1.0 / (2.0 - twos) + a[1];
  for (int k = 2; k <= N + 1; ++k) W[k] = a[k] + b[k - 1];

  OperatorMatrix out;
  out.s = s;
  out.grid = grid;
  out.entries = Eigen::MatrixXd::Zero(m, m);
  out.tail_diagonal = Eigen::VectorXd::Zero(m);

  for (int i = 1; i <= m; ++i) {  // node numbering 1..N-1
    const int reach = std::max(i, N - i);
    double diag = 0.0;
    for (int k = 1; k <= reach + 1; ++k) {
      // panel reach+1 contributes only its rising half to D_{reach+1}
      const double w = (k <= reach) ? W[k] : b[reach];
      diag += 2.0 * w;
      if (i - k >= 1) out.entries(i - 1, i - k - 1) -= w;
      if (i + k <= m) out.entries(i - 1, i + k - 1) -= w;
    }
    diag += 2.0 * std::pow(static_cast<double>(reach + 1), -twos) / twos;
    out.entries(i - 1, i - 1) = diag;

    const double dl = grid.node(i - 1) - grid.left;
    const double dr = grid.right - grid.node(i - 1);
    out.tail_diagonal[i - 1] = (std::pow(dl, -twos) + std::pow(dr, -twos)) / twos;
  }
  out.entries *= hpow;
  return out;
}

GridFunction apply(const OperatorMatrix& m, const GridFunction& f) {
  if (!m.grid.same(f.grid)) throw std::invalid_argument("apply: grid mismatch");
  return GridFunction{f.grid, m.entries * f.values};
}

void export_matrix_text(const OperatorMatrix& m, std::ostream& out) {
  for (int i = 0; i < m.entries.rows(); ++i) {
    for (int j = 0; j < m.entries.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m.entries(i, j));
    }
    out << '\n';
  }
}

}  // namespace fracsys
