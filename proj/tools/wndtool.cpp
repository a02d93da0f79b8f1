// wndtool: generate -> solve -> audit -> verify -> refine, over the C API.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wnd/wnd.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // infeasible / violating / refinement failed
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

void check(wnd_status st, const char* what) {
  if (st != WND_OK) throw Failure{kExitUsage, std::string(what) + ": " + wnd_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using InstanceHandle = std::unique_ptr<wnd_instance, Deleter<wnd_instance, wnd_instance_free>>;
using SolutionHandle = std::unique_ptr<wnd_solution, Deleter<wnd_solution, wnd_solution_free>>;
using ReportHandle = std::unique_ptr<wnd_report, Deleter<wnd_report, wnd_report_free>>;
using VerificationHandle =
    std::unique_ptr<wnd_verification, Deleter<wnd_verification, wnd_verification_free>>;
using RefinementHandle = std::unique_ptr<wnd_refinement, Deleter<wnd_refinement, wnd_refinement_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  wnd_string_free(s);
  return out;
}

InstanceHandle load_instance(const std::string& path) {
  wnd_instance* inst = nullptr;
  check(wnd_instance_load(path.c_str(), &inst), "reading instance");
  return InstanceHandle(inst);
}

SolutionHandle load_solution(const wnd_instance* inst, const std::string& path) {
  wnd_solution* sol = nullptr;
  check(wnd_solution_load(inst, path.c_str(), &sol), "reading solution");
  return SolutionHandle(sol);
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Failure{kExitUsage, "cannot write " + path};
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

std::string instance_seed(const wnd_instance* inst) {
  char* seed = nullptr;
  check(wnd_instance_meta(inst, "seed", &seed), "reading metadata");
  const std::string out = take(seed);
  return out.empty() ? "-" : out;
}

void header(const std::string& command, const std::string& details) {
  std::cerr << "# wndtool " << wnd_version() << " " << command << " " << details << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power assignment models: generation, solving, exact audit and repair"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wnd_version()));

  // gen
  wnd_gen_params gp;
  wnd_gen_params_default(&gp);
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--receivers", gp.receivers, "number of receivers")->capture_default_str();
  gen->add_option("--transmitters", gp.transmitters, "number of transmitters")->capture_default_str();
  gen->add_option("--seed", gp.seed, "random seed")->capture_default_str();
  gen->add_option("--delta-db", gp.delta_db, "SIR threshold in dB (8..11)")->capture_default_str();
  gen->add_option("--pmax-dbmw", gp.pmax_dbmw, "maximum power in dBmW")->capture_default_str();
  gen->add_option("--noise-dbmw", gp.noise_dbmw, "noise in dBmW")->capture_default_str();
  gen->add_option("--area", gp.area_size, "side of the square area in m")->capture_default_str();
  gen->add_option("--pathloss", gp.pathloss_exponent, "path-loss exponent")->capture_default_str();
  gen->add_option("--reference-db", gp.reference_fading_db, "fading at 1 m in dB")->capture_default_str();
  gen->add_option("--shadowing-db", gp.shadowing_sigma_db, "log-normal shadowing sigma in dB")
      ->capture_default_str();
  gen->add_option("-o,--output", gen_out, "instance file (default stdout)");

  // solve
  std::string solve_inst, solve_out, solve_model = "spap", solve_scale = "1e12", solve_from;
  double solve_eps = 1e-6, solve_time = 3600;
  std::size_t solve_nodes = 100000;
  bool solve_verify_mode = false;
  auto* solve = app.add_subcommand("solve", "solve the SPAP (or PAP) model in floating point");
  solve->add_option("instance", solve_inst, "instance file")->required();
  solve->add_option("--model", solve_model, "pap or spap")->check(CLI::IsMember({"pap", "spap"}))->capture_default_str();
  solve->add_option("--scale", solve_scale, "SIR row scaling factor")->capture_default_str();
  solve->add_option("--eps", solve_eps, "feasibility tolerance")->capture_default_str();
  solve->add_option("--node-limit", solve_nodes, "branch-and-bound node limit")->capture_default_str();
  solve->add_option("--time-limit", solve_time, "time limit in seconds")->capture_default_str();
  solve->add_flag("--verify-mode", solve_verify_mode, "accept incumbents only after exact verification");
  solve->add_option("--from", solve_from, "solution whose assignment the PAP model uses");
  solve->add_option("-o,--output", solve_out, "solution file (default stdout)");

  // audit
  std::string audit_inst, audit_sol, audit_out, audit_tol = "1e-6";
  auto* audit = app.add_subcommand("audit", "exact a-posteriori check of a solution");
  audit->add_option("instance", audit_inst, "instance file")->required();
  audit->add_option("solution", audit_sol, "solution file")->required();
  audit->add_option("--serve-tol", audit_tol, "served if SIR >= delta - tol")->capture_default_str();
  audit->add_option("-o,--output", audit_out, "JSON report file");

  // verify
  std::string verify_inst, verify_sol, verify_out, verify_repaired;
  auto* verify = app.add_subcommand("verify", "decide the solution's assignment exactly");
  verify->add_option("instance", verify_inst, "instance file")->required();
  verify->add_option("solution", verify_sol, "solution file")->required();
  verify->add_option("-o,--output", verify_out, "verdict file with power vector or certificate");
  verify->add_option("--repaired", verify_repaired, "write the solution with the exact power vector");

  // refine
  std::string refine_inst, refine_sol, refine_out, refine_report, refine_tol = "1e-25", refine_scale = "1e12";
  std::size_t refine_rounds = 10;
  auto* refine = app.add_subcommand("refine", "iteratively refine the power vector");
  refine->add_option("instance", refine_inst, "instance file")->required();
  refine->add_option("solution", refine_sol, "solution file")->required();
  refine->add_option("--tol", refine_tol, "exact violation tolerance")->capture_default_str();
  refine->add_option("--max-rounds", refine_rounds, "refinement rounds")->capture_default_str();
  refine->add_option("--scale", refine_scale, "SIR row scaling factor")->capture_default_str();
  refine->add_option("-o,--output", refine_out, "repaired solution file (default stdout)");
  refine->add_option("--report", refine_report, "refinement trace file");

  // mps
  std::string mps_inst, mps_out, mps_model = "spap", mps_scale = "1", mps_from;
  auto* mps = app.add_subcommand("mps", "export a model as (lossy) MPS");
  mps->add_option("instance", mps_inst, "instance file")->required();
  mps->add_option("--model", mps_model, "pap or spap")->check(CLI::IsMember({"pap", "spap"}))->capture_default_str();
  mps->add_option("--scale", mps_scale, "SIR row scaling factor")->capture_default_str();
  mps->add_option("--from", mps_from, "solution whose assignment the PAP model uses");
  mps->add_option("-o,--output", mps_out, "MPS file (default stdout)");

  // brute
  std::string brute_inst, brute_out;
  auto* brute = app.add_subcommand("brute", "exhaustive exact optimum (tiny instances)");
  brute->add_option("instance", brute_inst, "instance file")->required();
  brute->add_option("-o,--output", brute_out, "solution file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      header("gen", "seed=" + std::to_string(gp.seed));
      wnd_instance* raw = nullptr;
      check(wnd_instance_generate(&gp, &raw), "generating instance");
      InstanceHandle inst(raw);
      char* json = nullptr;
      check(wnd_instance_to_json(inst.get(), &json), "serializing instance");
      write_or_print(gen_out, take(json));
      return kExitOk;
    }

    if (*solve) {
      auto inst = load_instance(solve_inst);
      header("solve", "seed=" + instance_seed(inst.get()) + " model=" + solve_model + " scale=" +
                          solve_scale + " eps=" + std::to_string(solve_eps));
      wnd_solve_options o;
      wnd_solve_options_default(&o);
      o.scale = solve_scale.c_str();
      o.eps = solve_eps;
      o.node_limit = solve_nodes;
      o.time_limit = solve_time;
      o.verification_mode = solve_verify_mode ? 1 : 0;
      wnd_solution* raw = nullptr;
      if (solve_model == "spap") {
        check(wnd_solve_spap(inst.get(), &o, &raw), "solving");
      } else {
        SolutionHandle from;
        if (!solve_from.empty()) from = load_solution(inst.get(), solve_from);
        check(wnd_solve_pap(inst.get(), from.get(), &o, &raw), "solving");
      }
      SolutionHandle sol(raw);
      char* json = nullptr;
      check(wnd_solution_to_json(sol.get(), &json), "serializing solution");
      write_or_print(solve_out, take(json));
      char* st = nullptr;
      check(wnd_solution_status(sol.get(), &st), "status");
      const std::string status = take(st);
      std::cerr << "status: " << status << ", claimed served: " << wnd_solution_served_count(sol.get())
                << "\n";
      return status == "infeasible" ? kExitNegative : kExitOk;
    }

    if (*audit) {
      auto inst = load_instance(audit_inst);
      auto sol = load_solution(inst.get(), audit_sol);
      header("audit", "seed=" + instance_seed(inst.get()) + " serve_tol=" + audit_tol);
      wnd_report* raw = nullptr;
      check(wnd_audit(inst.get(), sol.get(), audit_tol.c_str(), &raw), "auditing");
      ReportHandle report(raw);
      char* table = nullptr;
      check(wnd_report_table(report.get(), &table), "rendering");
      std::cout << take(table);
      if (!audit_out.empty()) {
        char* json = nullptr;
        check(wnd_report_to_json(report.get(), &json), "serializing report");
        write_or_print(audit_out, take(json));
      }
      return wnd_report_unserved(report.get()) > 0 ? kExitNegative : kExitOk;
    }

    if (*verify) {
      auto inst = load_instance(verify_inst);
      auto sol = load_solution(inst.get(), verify_sol);
      header("verify", "seed=" + instance_seed(inst.get()) + " exact=rational");
      wnd_verification* raw = nullptr;
      check(wnd_verify(inst.get(), sol.get(), &raw), "verifying");
      VerificationHandle v(raw);
      char* json = nullptr;
      check(wnd_verification_to_json(v.get(), &json), "serializing verdict");
      const std::string text = take(json);
      if (verify_out.empty()) {
        std::cout << text;
      } else {
        write_or_print(verify_out, text);
      }
      const bool feasible = wnd_verification_feasible(v.get()) != 0;
      std::cerr << "verdict: " << (feasible ? "feasible" : "infeasible") << "\n";
      if (feasible && !verify_repaired.empty()) {
        wnd_solution* rep = nullptr;
        check(wnd_verification_apply(v.get(), sol.get(), &rep), "applying power vector");
        SolutionHandle repaired(rep);
        char* sj = nullptr;
        check(wnd_solution_to_json(repaired.get(), &sj), "serializing solution");
        write_or_print(verify_repaired, take(sj));
      }
      return feasible ? kExitOk : kExitNegative;
    }

    if (*refine) {
      auto inst = load_instance(refine_inst);
      auto sol = load_solution(inst.get(), refine_sol);
      header("refine", "seed=" + instance_seed(inst.get()) + " scale=" + refine_scale + " tol=" + refine_tol);
      wnd_refinement* raw = nullptr;
      check(wnd_refine(inst.get(), sol.get(), refine_tol.c_str(), refine_rounds, refine_scale.c_str(), &raw),
            "refining");
      RefinementHandle r(raw);
      char* trace = nullptr;
      check(wnd_refinement_to_json(r.get(), &trace), "serializing trace");
      const std::string trace_text = take(trace);
      if (!refine_report.empty()) write_or_print(refine_report, trace_text);
      char* mv = nullptr;
      check(wnd_refinement_max_violation(r.get(), &mv), "violation");
      std::cerr << "rounds: " << wnd_refinement_rounds(r.get()) << ", max violation: " << take(mv) << "\n";
      if (!wnd_refinement_success(r.get())) {
        std::cerr << trace_text;
        return kExitNegative;
      }
      wnd_solution* rep = nullptr;
      check(wnd_refinement_apply(r.get(), sol.get(), &rep), "applying refined power");
      SolutionHandle repaired(rep);
      char* sj = nullptr;
      check(wnd_solution_to_json(repaired.get(), &sj), "serializing solution");
      write_or_print(refine_out, take(sj));
      return kExitOk;
    }

    if (*mps) {
      auto inst = load_instance(mps_inst);
      header("mps", "model=" + mps_model + " scale=" + mps_scale + " (lossy)");
      SolutionHandle from;
      if (!mps_from.empty()) from = load_solution(inst.get(), mps_from);
      char* text = nullptr;
      check(wnd_export_mps(inst.get(), mps_model.c_str(), mps_scale.c_str(), from.get(), &text), "exporting");
      write_or_print(mps_out, take(text));
      return kExitOk;
    }

    if (*brute) {
      auto inst = load_instance(brute_inst);
      header("brute", "seed=" + instance_seed(inst.get()));
      wnd_solution* raw = nullptr;
      check(wnd_brute_force(inst.get(), &raw), "enumerating");
      SolutionHandle sol(raw);
      char* json = nullptr;
      check(wnd_solution_to_json(sol.get(), &json), "serializing solution");
      write_or_print(brute_out, take(json));
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kExitUsage;
}
