// fracsys: command-line frontend for the fractional-system toolkit.
//
// Subcommands: eval, solve, eig, verify, scan. Every run echoes its effective
// configuration into the output directory; timestamps live only in the
// run_meta.txt sidecar, so primary outputs are byte-reproducible.
//
// Exit codes: 0 success, 1 failed verification / blow-up in the admissible
// scan region, 2 invalid flags or parameters, 3 quadrature non-convergence.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracsys/exponents.hpp"
#include "fracsys/io.hpp"
#include "fracsys/operator.hpp"
#include "fracsys/profiles.hpp"
#include "fracsys/quadrature.hpp"
#include "fracsys/scan.hpp"
#include "fracsys/solver.hpp"
#include "fracsys/util.hpp"
#include "fracsys/verify.hpp"

namespace {

using namespace fracsys;

struct RadiiSpec {
  double lo = 1.0, hi = 10.0;
  int count = 5;
  bool log = false;
};

RadiiSpec parse_radii_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() < 3 || parts.size() > 4) {
    throw CLI::ValidationError("radii", "expected a:b:k, a:b:k(log|lin) or a:b:k:log");
  }
  RadiiSpec spec;
  std::string third = parts[2];
  std::string mode = parts.size() == 4 ? parts[3] : "";
  if (mode.empty()) {
    if (third.size() > 3 && third.substr(third.size() - 3) == "log") {
      mode = "log";
      third = third.substr(0, third.size() - 3);
    } else if (third.size() > 3 && third.substr(third.size() - 3) == "lin") {
      mode = "lin";
      third = third.substr(0, third.size() - 3);
    }
  }
  try {
    spec.lo = std::stod(parts[0]);
    spec.hi = std::stod(parts[1]);
    spec.count = std::stoi(third);
  } catch (const std::exception&) {
    throw CLI::ValidationError("radii", "could not parse numbers in '" + text + "'");
  }
  if (spec.count < 1) throw CLI::ValidationError("radii", "k must be >= 1");
  if (mode == "log") spec.log = true;
  else if (!mode.empty() && mode != "lin") {
    throw CLI::ValidationError("radii", "mode must be log or lin");
  }
  return spec;
}

std::vector<double> radii_values(const RadiiSpec& spec) {
  return spec.log ? logspace(spec.lo, spec.hi, spec.count)
                  : linspace(spec.lo, spec.hi, spec.count);
}

struct OutputDir {
  std::string dir = ".";

  std::string path(const std::string& name) const {
    return (std::filesystem::path(dir) / name).string();
  }
  void prepare(const CLI::App& app) const {
    std::filesystem::create_directories(dir);
    write_file(path("effective_config.txt"), app.config_to_str(true, false));
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    write_file(path("run_meta.txt"), std::string("timestamp_utc=") + buf + "\n");
  }
};

RadialProfile make_profile(const std::string& name, int n, double s, double t,
                           double p, double q, const QuadratureSpec& qspec) {
  if (name.rfind("power:", 0) == 0) {
    return RadialProfile::power(std::stod(name.substr(6)));
  }
  if (name == "theta") return RadialProfile::theta(n, s);
  if (name == "bump") return RadialProfile::bump(s);
  if (name == "gaussian") return RadialProfile::gaussian();
  if (name == "supersol") {
    const auto params = ProblemParams::make(n, s, t, p, q);
    return supersolution_constants(params, qspec).u_profile;
  }
  throw CLI::ValidationError("profile",
                             "expected power:<sigma>, theta, supersol, bump or gaussian");
}

int cmd_eval(int n, double s, double t, double p, double q, const std::string& profile,
             const std::string& radii_text, bool normalized,
             const std::vector<std::string>& emit, const QuadratureSpec& qspec,
             const OutputDir& out) {
  const auto prof = make_profile(profile, n, s, t, p, q, qspec);
  const auto radii = radii_values(parse_radii_spec(radii_text));
  std::vector<double> values;
  values.reserve(radii.size());
  for (double r : radii) {
    values.push_back(pv_radial_fraclap(prof, n, s, r, qspec, normalized));
  }
  std::printf("# profile=%s n=%d s=%s%s\n", profile.c_str(), n, format_double(s).c_str(),
              normalized ? " normalized" : "");
  std::printf("%-24s %s\n", "radius", "value");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::printf("%-24s %s\n", format_double(radii[i]).c_str(),
                format_double(values[i]).c_str());
  }
  for (const auto& e : emit) {
    if (e == "json") {
      write_file(out.path("eval.json"), eval_to_json(profile, n, s, normalized, radii, values));
    }
  }
  return 0;
}

int cmd_solve(double s, double t, double p, double q, int cells, double left,
              double right, const SolverConfig& cfg, bool dump_operator,
              const OutputDir& out) {
  const auto grid = Grid1D::make(left, right, cells);
  const auto As = assemble_operator(grid, s);
  const auto At = assemble_operator(grid, t);
  const auto sol = solve_system(As, At, p, q, cfg);
  write_file(out.path("solution.json"), solution_to_json(sol));
  write_file(out.path("trace.csv"), trace_to_csv(sol));
  if (dump_operator) {
    std::ostringstream os, ot;
    export_matrix_text(As, os);
    export_matrix_text(At, ot);
    write_file(out.path("operator_s.txt"), os.str());
    write_file(out.path("operator_t.txt"), ot.str());
  }
  std::printf("status=%s iterations=%d sup_u=%s sup_v=%s residual_u=%s residual_v=%s\n",
              to_string(sol.status).c_str(), sol.iterations,
              format_double(sol.sup_u).c_str(), format_double(sol.sup_v).c_str(),
              format_double(sol.residual_u).c_str(),
              format_double(sol.residual_v).c_str());
  return 0;
}

int cmd_eig(double s, double t, int cells, double left, double right,
            const OutputDir& out) {
  const auto grid = Grid1D::make(left, right, cells);
  const auto As = assemble_operator(grid, s);
  const auto At = assemble_operator(grid, t);
  const auto eig = principal_eigenpair(As, At);
  write_file(out.path("eig.json"), eigenpair_to_json(eig));
  std::printf("lambda1=%s residual=%s power_iterations=%d\n",
              format_double(eig.lambda1).c_str(), format_double(eig.residual).c_str(),
              eig.power_iterations);
  return 0;
}

int cmd_scan(const ScanConfig& cfg, const OutputDir& out) {
  const auto result = run_scan(cfg);
  write_file(out.path("scan.csv"), scan_to_csv(result.records));
  write_file(out.path("scan_summary.json"), scan_summary_to_json(result));
  std::printf("cells=%zu non_converged=%zu max_sup_condition_holds=%s\n",
              result.records.size(), result.non_converged.size(),
              result.max_sup_condition_holds >= 0.0
                  ? format_double(result.max_sup_condition_holds).c_str()
                  : "none");
  return result.any_blowup_in_condition_region ? 1 : 0;
}

struct VerifyArgs {
  std::vector<std::string> checks;
  int n = 3;
  double s = 0.5, t = 0.5, p = 5.0, q = 5.0;
  double sigma = std::nan("");
  double alpha = 0.25;
  std::size_t samples = 100000;
  std::uint64_t seed = 7;
  double bound = 0.0;
  double rtol = 1e-3;
  std::string radii_text;
};

int cmd_verify(const VerifyArgs& args, const OutputDir& out) {
  QuadratureSpec qspec;
  std::vector<std::string> selected = args.checks;
  const std::vector<std::string> all = {"sign-sigma",     "theta-bound",
                                        "harnack",        "supersolution",
                                        "f-inequality",   "dimension-reduction"};
  if (selected.empty() || (selected.size() == 1 && selected[0] == "all")) selected = all;

  bool all_passed = true;
  for (const auto& name : selected) {
    VerificationReport rep;
    if (name == "sign-sigma") {
      const double sigma = std::isnan(args.sigma) ? -args.n + args.s : args.sigma;
      const auto radii = args.radii_text.empty()
                             ? logspace(1.0, 10.0, 8)
                             : radii_values(parse_radii_spec(args.radii_text));
      rep = check_sign_sigma(args.n, args.s, sigma, radii, qspec);
    } else if (name == "theta-bound") {
      const auto radii = args.radii_text.empty()
                             ? logspace(2.0, 200.0, 25)
                             : radii_values(parse_radii_spec(args.radii_text));
      rep = check_theta_bound(args.n, args.s, radii, qspec);
    } else if (name == "harnack") {
      const auto radii = args.radii_text.empty()
                             ? logspace(1.0, 100.0, 20)
                             : radii_values(parse_radii_spec(args.radii_text));
      const auto profile = RadialProfile::inverse_power(args.n - 2.0 * args.s);
      rep = check_harnack_ratio(profile, radii, args.bound);
    } else if (name == "supersolution") {
      const auto params = ProblemParams::make(args.n, args.s, args.t, args.p, args.q);
      const auto pair = supersolution_constants(params, qspec);
      const auto radii = args.radii_text.empty()
                             ? logspace(0.1, 50.0, 30)
                             : radii_values(parse_radii_spec(args.radii_text));
      rep = check_supersolution(pair, radii, qspec);
    } else if (name == "f-inequality") {
      rep = check_f_inequality(args.alpha, sample_f_inputs(args.samples, args.seed));
    } else if (name == "dimension-reduction") {
      const auto radii = args.radii_text.empty()
                             ? std::vector<double>{0.5, 1.0, 2.0, 3.0}
                             : radii_values(parse_radii_spec(args.radii_text));
      rep = check_dimension_reduction(RadialProfile::gaussian(), args.n == 1 ? 2 : args.n,
                                      args.s, radii, qspec, args.rtol);
    } else {
      throw CLI::ValidationError("check", "unknown check '" + name + "'");
    }
    write_file(out.path("verify_" + rep.check_name + ".json"), report_to_json(rep));
    std::printf("%s %s min_margin=%s tolerance=%s\n", rep.passed ? "PASS" : "FAIL",
                rep.check_name.c_str(), format_double(rep.min_margin).c_str(),
                format_double(rep.tolerance).c_str());
    all_passed = all_passed && rep.passed;
  }
  return all_passed ? 0 : 1;
}

ParamRange parse_param_range(const std::string& text) {
  const auto spec = parse_radii_spec(text);
  if (spec.log) throw CLI::ValidationError("range", "p/q ranges are linear a:b:k");
  return ParamRange{spec.lo, spec.hi, spec.count};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracsys: fractional Laplacian evaluation, coupled-system solving and "
               "analytic verification"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; flags override it");

  OutputDir out;
  app.add_option("--output-dir", out.dir, "directory for emitted files")
      ->capture_default_str();

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate (-Delta)^s on a radial profile");
  eval->fallthrough();
  int ev_n = 1;
  double ev_s = 0.5, ev_t = 0.5, ev_p = 5.0, ev_q = 5.0;
  std::string ev_profile, ev_radii;
  bool ev_normalized = false;
  std::vector<std::string> ev_emit;
  eval->add_option("--n", ev_n, "dimension")->required();
  eval->add_option("--s", ev_s, "fractional order")->required();
  eval->add_option("--profile", ev_profile, "power:<sigma> | theta | supersol | bump | gaussian")
      ->required();
  eval->add_option("--radii", ev_radii, "a:b:k with optional log/lin suffix")->required();
  eval->add_flag("--normalized", ev_normalized, "multiply by C(n,s)");
  eval->add_option("--t", ev_t, "second order (supersol profile)");
  eval->add_option("--p", ev_p, "exponent p (supersol profile)");
  eval->add_option("--q", ev_q, "exponent q (supersol profile)");
  eval->add_option("--emit", ev_emit, "extra outputs: json");
  QuadratureSpec ev_qspec;
  eval->add_option("--quad-tol", ev_qspec.tolerance, "quadrature refinement tolerance")
      ->capture_default_str();
  eval->add_option("--quad-panels", ev_qspec.max_panels, "quadrature panel budget")
      ->capture_default_str();
  eval->add_option("--quad-order", ev_qspec.gauss_order, "points per quadrature panel")
      ->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "fixed-point solve of the coupled system");
  solve->fallthrough();
  int so_n = 1, so_cells = 256;
  double so_s = 0.5, so_t = 0.5, so_p = 2.0, so_q = 2.0, so_left = -1.0, so_right = 1.0;
  SolverConfig so_cfg;
  bool so_dump = false;
  solve->add_option("--n", so_n, "dimension (the discrete solve is 1-D)")
      ->check(CLI::IsMember({1}));
  solve->add_option("--s", so_s, "order of the u-equation")->required();
  solve->add_option("--t", so_t, "order of the v-equation")->required();
  solve->add_option("--p", so_p, "exponent p")->required();
  solve->add_option("--q", so_q, "exponent q")->required();
  solve->add_option("--cells", so_cells, "mesh cells")->capture_default_str();
  solve->add_option("--left", so_left, "domain left end")->capture_default_str();
  solve->add_option("--right", so_right, "domain right end")->capture_default_str();
  solve->add_option("--theta", so_cfg.theta, "shift in H")->capture_default_str();
  solve->add_option("--damping", so_cfg.damping, "Picard damping in (0,1]")
      ->capture_default_str();
  solve->add_option("--tol", so_cfg.tol_residual, "iterate-difference tolerance")
      ->capture_default_str();
  solve->add_option("--max-iter", so_cfg.max_iter, "iteration cap")->capture_default_str();
  solve->add_option("--init", so_cfg.init_value, "constant positive initial value")
      ->capture_default_str();
  solve->add_flag("--dump-operator", so_dump,
                  "export both operator matrices as text (one row per line)");

  // eig
  auto* eig = app.add_subcommand("eig", "coupled principal eigenpair");
  eig->fallthrough();
  int eg_n = 1, eg_cells = 256;
  double eg_s = 0.5, eg_t = 0.5, eg_left = -1.0, eg_right = 1.0;
  eig->add_option("--n", eg_n, "dimension (1)")->check(CLI::IsMember({1}));
  eig->add_option("--s", eg_s, "order of the u-equation")->required();
  eig->add_option("--t", eg_t, "order of the v-equation")->required();
  eig->add_option("--cells", eg_cells, "mesh cells")->capture_default_str();
  eig->add_option("--left", eg_left, "domain left end")->capture_default_str();
  eig->add_option("--right", eg_right, "domain right end")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run analytic margin checks");
  verify->fallthrough();
  VerifyArgs va;
  verify->add_option("--check", va.checks,
                     "sign-sigma | theta-bound | harnack | supersolution | "
                     "f-inequality | dimension-reduction | all");
  verify->add_option("--n", va.n, "dimension")->capture_default_str();
  verify->add_option("--s", va.s, "fractional order s")->capture_default_str();
  verify->add_option("--t", va.t, "fractional order t")->capture_default_str();
  verify->add_option("--p", va.p, "exponent p")->capture_default_str();
  verify->add_option("--q", va.q, "exponent q")->capture_default_str();
  verify->add_option("--sigma", va.sigma, "power exponent (sign-sigma)");
  verify->add_option("--alpha", va.alpha, "exponent alpha (f-inequality)")
      ->capture_default_str();
  verify->add_option("--samples", va.samples, "sample count (f-inequality)")
      ->capture_default_str();
  verify->add_option("--seed", va.seed, "sample seed (f-inequality)")->capture_default_str();
  verify->add_option("--bound", va.bound, "ratio bound (harnack; 0 = auto)")
      ->capture_default_str();
  verify->add_option("--rtol", va.rtol, "relative tolerance (dimension-reduction)")
      ->capture_default_str();
  verify->add_option("--radii", va.radii_text, "a:b:k radii override");

  // scan
  auto* scan = app.add_subcommand("scan", "sweep the (p,q) plane and solve per cell");
  scan->fallthrough();
  ScanConfig sc;
  std::string sc_p = "1.1:3:8", sc_q = "1.1:3:8";
  scan->add_option("--p", sc_p, "p range a:b:k")->capture_default_str();
  scan->add_option("--q", sc_q, "q range a:b:k")->capture_default_str();
  scan->add_option("--n", sc.n, "dimension for the classification")->capture_default_str();
  scan->add_option("--s", sc.s, "order s")->capture_default_str();
  scan->add_option("--t", sc.t, "order t")->capture_default_str();
  scan->add_option("--cells", sc.cells, "mesh cells")->capture_default_str();
  scan->add_option("--theta", sc.solver.theta, "shift in H")->capture_default_str();
  scan->add_option("--left", sc.left, "domain left end")->capture_default_str();
  scan->add_option("--right", sc.right, "domain right end")->capture_default_str();
  scan->add_option("--init", sc.solver.init_value, "initial constant")
      ->capture_default_str();
  scan->add_option("--max-iter", sc.solver.max_iter, "iteration cap")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    out.prepare(app);
    if (app.got_subcommand(eval)) {
      return cmd_eval(ev_n, ev_s, ev_t, ev_p, ev_q, ev_profile, ev_radii, ev_normalized,
                      ev_emit, ev_qspec, out);
    }
    if (app.got_subcommand(solve)) {
      return cmd_solve(so_s, so_t, so_p, so_q, so_cells, so_left, so_right, so_cfg,
                       so_dump, out);
    }
    if (app.got_subcommand(eig)) {
      return cmd_eig(eg_s, eg_t, eg_cells, eg_left, eg_right, out);
    }
    if (app.got_subcommand(verify)) {
      return cmd_verify(va, out);
    }
    if (app.got_subcommand(scan)) {
      sc.p_range = parse_param_range(sc_p);
      sc.q_range = parse_param_range(sc_q);
      return cmd_scan(sc, out);
    }
  } catch (const QuadratureError& e) {
    std::fprintf(stderr, "quadrature error: %s\n", e.what());
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
