#include "fracsys/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fracsys/util.hpp"

namespace fracsys {

namespace {

using nlohmann::json;

// Numbers are routed through shortest round-trip strings to keep files
// byte-stable; nlohmann emits doubles the same way, but being explicit here
// pins the contract.
json num(double v) { return json::parse(format_double(v == 0.0 ? 0.0 : v)); }

json vec(const Eigen::VectorXd& x) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) arr.push_back(num(x[i]));
  return arr;
}

json grid_json(const Grid1D& g) {
  return json{{"left", num(g.left)}, {"right", num(g.right)}, {"n_cells", g.n_cells}};
}

}  // namespace

std::string solution_to_json(const SystemSolution& sol) {
  json j;
  j["grid"] = grid_json(sol.u.grid);
  j["u"] = vec(sol.u.values);
  j["v"] = vec(sol.v.values);
  j["status"] = to_string(sol.status);
  j["iterations"] = sol.iterations;
  j["residual_u"] = num(sol.residual_u);
  j["residual_v"] = num(sol.residual_v);
  j["sup_u"] = num(sol.sup_u);
  j["sup_v"] = num(sol.sup_v);
  return j.dump(2) + "\n";
}

std::string trace_to_csv(const SystemSolution& sol) {
  std::ostringstream out;
  out << "iter,sup_u,sup_v\n";
  for (std::size_t i = 0; i < sol.iterate_trace.size(); ++i) {
    out << i << ',' << format_double(sol.iterate_trace[i].first) << ','
        << format_double(sol.iterate_trace[i].second) << '\n';
  }
  return out.str();
}

std::string eigenpair_to_json(const EigenPair& eig) {
  json j;
  j["grid"] = grid_json(eig.phi.grid);
  j["lambda1"] = num(eig.lambda1);
  j["residual"] = num(eig.residual);
  j["power_iterations"] = eig.power_iterations;
  j["phi"] = vec(eig.phi.values);
  j["psi"] = vec(eig.psi.values);
  return j.dump(2) + "\n";
}

std::string report_to_json(const VerificationReport& rep) {
  json j;
  j["check_name"] = rep.check_name;
  json params = json::object();
  for (const auto& [k, v] : rep.params) params[k] = num(v);
  j["params"] = params;
  j["sample_labels"] = rep.sample_labels;
  json samples = json::array();
  for (const auto& row : rep.samples) {
    json r = json::array();
    for (double v : row) r.push_back(num(v));
    samples.push_back(r);
  }
  j["samples"] = samples;
  json margins = json::array();
  for (double m : rep.margins) margins.push_back(num(m));
  j["margins"] = margins;
  j["min_margin"] = num(rep.min_margin);
  j["tolerance"] = num(rep.tolerance);
  j["passed"] = rep.passed;
  return j.dump(2) + "\n";
}

std::string eval_to_json(const std::string& profile_name, int n, double s,
                         bool normalized, const std::vector<double>& radii,
                         const std::vector<double>& values) {
  json j;
  j["profile"] = profile_name;
  j["n"] = n;
  j["s"] = num(s);
  j["normalized"] = normalized;
  json r = json::array(), v = json::array();
  for (double x : radii) r.push_back(num(x));
  for (double x : values) v.push_back(num(x));
  j["radii"] = r;
  j["values"] = v;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fracsys
