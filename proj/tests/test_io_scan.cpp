#include <doctest.h>

#include <json.hpp>

#include "fracsys/io.hpp"
#include "fracsys/scan.hpp"
#include "fracsys/verify.hpp"

using namespace fracsys;

TEST_CASE("solution and trace serialization") {
  const auto grid = Grid1D::make(-1.0, 1.0, 32);
  const auto A = assemble_operator(grid, 0.5);
  SolverConfig cfg;
  cfg.max_iter = 10;
  const auto sol = solve_system(A, A, 2.0, 2.0, cfg);

  const auto js = nlohmann::json::parse(solution_to_json(sol));
  CHECK(js["grid"]["n_cells"] == 32);
  CHECK(js["grid"]["left"] == -1.0);
  CHECK(js["u"].size() == 31);
  CHECK(js["v"].size() == 31);
  CHECK(js["status"] == to_string(sol.status));
  CHECK(js["iterations"] == sol.iterations);
  CHECK(js.contains("residual_u"));
  CHECK(js.contains("sup_u"));

  const auto csv = trace_to_csv(sol);
  CHECK(csv.rfind("iter,sup_u,sup_v\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == sol.iterate_trace.size() + 1);
}

TEST_CASE("eigenpair serialization is byte-stable") {
  const auto grid = Grid1D::make(-1.0, 1.0, 64);
  const auto A = assemble_operator(grid, 0.5);
  const auto e1 = principal_eigenpair(A, A);
  const auto e2 = principal_eigenpair(A, A);
  CHECK(eigenpair_to_json(e1) == eigenpair_to_json(e2));
  const auto js = nlohmann::json::parse(eigenpair_to_json(e1));
  CHECK(js["lambda1"].get<double>() == e1.lambda1);
  CHECK(js["phi"].size() == 63);
}

TEST_CASE("verification report JSON carries enough to re-derive the verdict") {
  const auto rep = check_f_inequality(0.5, sample_f_inputs(500, 3));
  const auto js = nlohmann::json::parse(report_to_json(rep));
  double min_margin = 1e300;
  for (const auto& m : js["margins"]) min_margin = std::min(min_margin, m.get<double>());
  CHECK(min_margin == rep.min_margin);
  CHECK(js["passed"].get<bool>() == (min_margin >= -js["tolerance"].get<double>()));
}

TEST_CASE("scan: record grid, determinism, invalid cells") {
  ScanConfig cfg;
  cfg.p_range = {1.1, 2.0, 4};
  cfg.q_range = {0.4, 2.0, 4};  // first q column makes pq <= 1 for small p
  cfg.cells = 32;
  cfg.solver.max_iter = 2000;
  const auto r1 = run_scan(cfg);
  const auto r2 = run_scan(cfg);
  CHECK(r1.records.size() == 16);
  CHECK(scan_to_csv(r1.records) == scan_to_csv(r2.records));
  CHECK(scan_summary_to_json(r1) == scan_summary_to_json(r2));

  bool found_invalid = false;
  for (const auto& rec : r1.records) {
    if (rec.p * rec.q <= 1.0) {
      CHECK(rec.status == "InvalidParams");
      found_invalid = true;
    } else {
      CHECK(rec.status != "InvalidParams");
    }
  }
  CHECK(found_invalid);

  const auto csv = scan_to_csv(r1.records);
  CHECK(csv.rfind("p,q,beta1,beta2,condition_holds,status,sup_u,sup_v,iterations\n", 0) == 0);
}

TEST_CASE("scan summary flags blow-up in the admissible region") {
  ScanConfig cfg;
  cfg.p_range = {2.0, 2.0, 1};
  cfg.q_range = {2.0, 2.0, 1};
  cfg.cells = 32;
  cfg.solver.init_value = 50.0;  // far above the instability threshold
  cfg.solver.max_iter = 500;
  const auto r = run_scan(cfg);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].condition_holds);  // n = 1: the condition always holds
  CHECK(r.records[0].status == "BlownUp");
  CHECK(r.any_blowup_in_condition_region);
  const auto js = nlohmann::json::parse(scan_summary_to_json(r));
  CHECK(js["any_blowup_in_condition_region"].get<bool>());
  CHECK(js["non_converged_cells"].size() == 1);
}

TEST_CASE("file round trip") {
  const std::string path = "io_test_roundtrip.txt";
  write_file(path, "alpha\nbeta\n");
  CHECK(read_file(path) == "alpha\nbeta\n");
  std::remove(path.c_str());
}
