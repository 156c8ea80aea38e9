#ifndef FRACSYS_SCAN_HPP
#define FRACSYS_SCAN_HPP

#include <string>
#include <vector>

#include "fracsys/exponents.hpp"
#include "fracsys/solver.hpp"

namespace fracsys {

struct ParamRange {
  double lo = 1.1;
  double hi = 3.0;
  int count = 8;

  std::vector<double> values() const;
};

struct ScanConfig {
  ParamRange p_range, q_range;
  int n = 1;  // dimension used for the subcriticality classification
  double s = 0.5, t = 0.5;
  double left = -1.0, right = 1.0;
  int cells = 128;
  SolverConfig solver;
};

struct ScanRecord {
  double p = 0.0, q = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
  bool condition_holds = false;
  std::string status;  // solver status, or "InvalidParams" for pq <= 1 cells
  double sup_u = 0.0, sup_v = 0.0;
  int iterations = 0;
};

struct ScanResult {
  std::vector<ScanRecord> records;  // row-major: p outer, q inner
  // sup over {max(sup_u, sup_v) : condition_holds and solver ran}; negative
  // when no such cell exists
  double max_sup_condition_holds = -1.0;
  std::vector<ScanRecord> non_converged;  // MaxIterExceeded or BlownUp cells
  bool any_blowup_in_condition_region = false;
};

// Cells are independent and run concurrently (FRACSYS_THREADS caps workers);
// records are collected in index order so the output is deterministic.
ScanResult run_scan(const ScanConfig& config);

// columns: p,q,beta1,beta2,condition_holds,status,sup_u,sup_v,iterations
std::string scan_to_csv(const std::vector<ScanRecord>& records);

// {"max_sup_condition_holds":..|null,"non_converged_cells":[{p,q,status}...],
//  "any_blowup_in_condition_region":bool}
std::string scan_summary_to_json(const ScanResult& result);

}  // namespace fracsys

#endif
