#ifndef FRACSYS_IO_HPP
#define FRACSYS_IO_HPP

#include <string>

#include "fracsys/solver.hpp"
#include "fracsys/verify.hpp"

namespace fracsys {

/* Serialization with frozen schemas (documented in the README; new fields
   append only). All numbers are shortest round-trip decimals, so identical
   inputs produce byte-identical files on one platform. */

// {"grid":{...},"u":[...],"v":[...],"status":"...","iterations":N,
//  "residual_u":..,"residual_v":..,"sup_u":..,"sup_v":..}
std::string solution_to_json(const SystemSolution& sol);

// header iter,sup_u,sup_v; one row per trace entry starting at iteration 0
std::string trace_to_csv(const SystemSolution& sol);

// {"grid":{...},"lambda1":..,"residual":..,"power_iterations":N,
//  "phi":[...],"psi":[...]}
std::string eigenpair_to_json(const EigenPair& eig);

// {"check_name":..,"params":{...},"sample_labels":[...],"samples":[[...]],
//  "margins":[...],"min_margin":..,"tolerance":..,"passed":bool}
std::string report_to_json(const VerificationReport& rep);

// {"profile":..,"n":..,"s":..,"normalized":bool,"radii":[...],"values":[...]}
std::string eval_to_json(const std::string& profile_name, int n, double s,
                         bool normalized, const std::vector<double>& radii,
                         const std::vector<double>& values);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace fracsys

#endif
