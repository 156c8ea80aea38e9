#include "fracsys/scan.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fracsys/operator.hpp"
#include "fracsys/util.hpp"

namespace fracsys {

std::vector<double> ParamRange::values() const {
  if (count < 1) throw std::invalid_argument("ParamRange: count must be >= 1");
  return linspace(lo, hi, static_cast<std::size_t>(count));
}

ScanResult run_scan(const ScanConfig& config) {
  config.solver.validate();
  const auto grid = Grid1D::make(config.left, config.right, config.cells);
  const auto As = assemble_operator(grid, config.s);
  const auto At = assemble_operator(grid, config.t);

  const auto ps = config.p_range.values();
  const auto qs = config.q_range.values();
  const std::size_t total = ps.size() * qs.size();

  ScanResult result;
  result.records.resize(total);
  parallel_for(total, [&](std::size_t idx) {
    const double p = ps[idx / qs.size()];
    const double q = qs[idx % qs.size()];
    ScanRecord rec;
    rec.p = p;
    rec.q = q;
    if (!(p * q > 1.0)) {
      rec.status = "InvalidParams";
      result.records[idx] = rec;
      return;
    }
    const auto params = ProblemParams::make(config.n, config.s, config.t, p, q);
    const auto report = classify_exponents(params);
    rec.beta1 = report.beta1;
    rec.beta2 = report.beta2;
    rec.condition_holds = report.classification != Criticality::Fails;
    const auto sol = solve_system(As, At, p, q, config.solver);
    rec.status = to_string(sol.status);
    rec.sup_u = sol.sup_u;
    rec.sup_v = sol.sup_v;
    rec.iterations = sol.iterations;
    result.records[idx] = rec;
  });

  for (const auto& rec : result.records) {
    if (rec.status == "InvalidParams") continue;
    if (rec.condition_holds) {
      result.max_sup_condition_holds =
          std::max(result.max_sup_condition_holds, std::max(rec.sup_u, rec.sup_v));
      if (rec.status == "BlownUp") result.any_blowup_in_condition_region = true;
    }
    if (rec.status == "MaxIterExceeded" || rec.status == "BlownUp") {
      result.non_converged.push_back(rec);
    }
  }
  return result;
}

std::string scan_to_csv(const std::vector<ScanRecord>& records) {
  std::ostringstream out;
  out << "p,q,beta1,beta2,condition_holds,status,sup_u,sup_v,iterations\n";
  for (const auto& r : records) {
    out << format_double(r.p) << ',' << format_double(r.q) << ','
        << format_double(r.beta1) << ',' << format_double(r.beta2) << ','
        << (r.condition_holds ? "true" : "false") << ',' << r.status << ','
        << format_double(r.sup_u) << ',' << format_double(r.sup_v) << ','
        << r.iterations << '\n';
  }
  return out.str();
}

std::string scan_summary_to_json(const ScanResult& result) {
  nlohmann::json j;
  if (result.max_sup_condition_holds >= 0.0) {
    j["max_sup_condition_holds"] =
        nlohmann::json::parse(format_double(result.max_sup_condition_holds));
  } else {
    j["max_sup_condition_holds"] = nullptr;
  }
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& r : result.non_converged) {
    cells.push_back({{"p", nlohmann::json::parse(format_double(r.p))},
                     {"q", nlohmann::json::parse(format_double(r.q))},
                     {"status", r.status}});
  }
  j["non_converged_cells"] = cells;
  j["any_blowup_in_condition_region"] = result.any_blowup_in_condition_region;
  return j.dump(2) + "\n";
}

}  // namespace fracsys
