#include "wnd/wnd.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "wnd/audit.hpp"
#include "wnd/errors.hpp"
#include "wnd/instgen.hpp"
#include "wnd/io.hpp"
#include "wnd/lp_fp.hpp"
#include "wnd/lp_refine.hpp"
#include "wnd/mip_bnb.hpp"
#include "wnd/model.hpp"

using InstancePtr = std::shared_ptr<const wnd::Instance>;

struct wnd_instance {
  InstancePtr inst;
};

struct wnd_solution {
  InstancePtr inst;
  wnd::Solution sol;
};

struct wnd_report {
  InstancePtr inst;
  wnd::AuditReport report;
};

struct wnd_verification {
  InstancePtr inst;
  wnd::Assignment assignment;
  wnd::VerificationResult result;
};

struct wnd_refinement {
  InstancePtr inst;
  wnd::RefineResult result;
};

namespace {

thread_local std::string g_last_error;

wnd_status fail(wnd_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs f, translating exceptions into status codes.
template <typename F>
wnd_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const wnd::DomainError& e) {
    return fail(WND_ERR_DOMAIN, e.what());
  } catch (const wnd::IoError& e) {
    return fail(WND_ERR_IO, e.what());
  } catch (const wnd::FormatError& e) {
    return fail(WND_ERR_FORMAT, e.what());
  } catch (const wnd::LimitError& e) {
    return fail(WND_ERR_LIMIT, e.what());
  } catch (const std::exception& e) {
    return fail(WND_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WND_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wnd_status put_string(char** out, const std::string& s) {
  *out = dup_string(s);
  return WND_OK;
}

#define WND_REQUIRE(ptr)                                         \
  do {                                                           \
    if ((ptr) == nullptr) return fail(WND_ERR_NULL, #ptr " is NULL"); \
  } while (0)

wnd::Rational parse_scale(const char* text, const char* fallback) {
  const wnd::Rational s = wnd::parse_rational(text ? text : fallback);
  if (sgn(s) <= 0) throw wnd::DomainError("scale must be positive");
  return s;
}

wnd::Assignment best_server_assignment(const wnd::Instance& inst) {
  wnd::Assignment asg(inst.num_receivers());
  for (std::size_t r = 0; r < inst.num_receivers(); ++r) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < inst.num_transmitters(); ++t) {
      if (inst.fading_matrix()[r][t] > inst.fading_matrix()[r][best]) best = t;
    }
    asg.assign(wnd::ReceiverIndex{r}, wnd::TransmitterIndex{best});
  }
  return asg;
}

}  // namespace

extern "C" {

const char* wnd_version(void) { return wnd::kToolVersion; }

const char* wnd_last_error(void) { return g_last_error.c_str(); }

void wnd_string_free(char* s) { std::free(s); }

void wnd_gen_params_default(wnd_gen_params* params) {
  if (!params) return;
  const wnd::GenParams d;
  params->receivers = d.receivers;
  params->transmitters = d.transmitters;
  params->area_size = d.area_size;
  params->pathloss_exponent = d.pathloss_exponent;
  params->reference_fading_db = d.reference_fading_db;
  params->noise_dbmw = d.noise_dbmw;
  params->delta_db = d.delta_db;
  params->pmax_dbmw = d.pmax_dbmw;
  params->shadowing_sigma_db = d.shadowing_sigma_db;
  params->seed = d.seed;
}

wnd_status wnd_instance_generate(const wnd_gen_params* params, wnd_instance** out) {
  WND_REQUIRE(params);
  WND_REQUIRE(out);
  return guarded([&] {
    wnd::GenParams p;
    p.receivers = params->receivers;
    p.transmitters = params->transmitters;
    p.area_size = params->area_size;
    p.pathloss_exponent = params->pathloss_exponent;
    p.reference_fading_db = params->reference_fading_db;
    p.noise_dbmw = params->noise_dbmw;
    p.delta_db = params->delta_db;
    p.pmax_dbmw = params->pmax_dbmw;
    p.shadowing_sigma_db = params->shadowing_sigma_db;
    p.seed = params->seed;
    *out = new wnd_instance{std::make_shared<const wnd::Instance>(wnd::generate_instance(p))};
    return WND_OK;
  });
}

wnd_status wnd_instance_from_json(const char* json, wnd_instance** out) {
  WND_REQUIRE(json);
  WND_REQUIRE(out);
  return guarded([&] {
    *out = new wnd_instance{std::make_shared<const wnd::Instance>(wnd::instance_from_json(json))};
    return WND_OK;
  });
}

wnd_status wnd_instance_load(const char* path, wnd_instance** out) {
  WND_REQUIRE(path);
  WND_REQUIRE(out);
  return guarded([&] {
    *out = new wnd_instance{
        std::make_shared<const wnd::Instance>(wnd::instance_from_json(wnd::read_text_file(path)))};
    return WND_OK;
  });
}

wnd_status wnd_instance_to_json(const wnd_instance* inst, char** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::instance_to_json(*inst->inst)); });
}

wnd_status wnd_instance_save(const wnd_instance* inst, const char* path) {
  WND_REQUIRE(inst);
  WND_REQUIRE(path);
  return guarded([&] {
    wnd::write_text_file(path, wnd::instance_to_json(*inst->inst));
    return WND_OK;
  });
}

size_t wnd_instance_num_receivers(const wnd_instance* inst) {
  return inst ? inst->inst->num_receivers() : 0;
}

size_t wnd_instance_num_transmitters(const wnd_instance* inst) {
  return inst ? inst->inst->num_transmitters() : 0;
}

wnd_status wnd_instance_fading_range(const wnd_instance* inst, double* lo, double* hi) {
  WND_REQUIRE(inst);
  WND_REQUIRE(lo);
  WND_REQUIRE(hi);
  return guarded([&] {
    const auto [a, b] = wnd::fading_range(*inst->inst);
    *lo = wnd::to_double_nearest(a);
    *hi = wnd::to_double_nearest(b);
    return WND_OK;
  });
}

wnd_status wnd_instance_meta(const wnd_instance* inst, const char* key, char** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(key);
  WND_REQUIRE(out);
  return guarded([&] {
    const auto& meta = inst->inst->meta();
    const auto it = meta.find(key);
    return put_string(out, it == meta.end() ? std::string() : it->second);
  });
}

void wnd_instance_free(wnd_instance* inst) { delete inst; }

wnd_status wnd_spap_dimensions(const wnd_instance* inst, size_t* variables, size_t* rows,
                               size_t* nonzeros) {
  WND_REQUIRE(inst);
  WND_REQUIRE(variables);
  WND_REQUIRE(rows);
  WND_REQUIRE(nonzeros);
  return guarded([&] {
    const auto dims = wnd::dimensions(wnd::build_spap(*inst->inst).lp);
    *variables = dims.variables;
    *rows = dims.rows;
    *nonzeros = dims.nonzeros;
    return WND_OK;
  });
}

wnd_status wnd_export_mps(const wnd_instance* inst, const char* model, const char* scale,
                          const wnd_solution* sol, char** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(model);
  WND_REQUIRE(out);
  return guarded([&] {
    const auto s = parse_scale(scale, "1");
    const std::string m = model;
    if (m == "spap") return put_string(out, wnd::to_mps(wnd::scale_rows(wnd::build_spap(*inst->inst), s)));
    if (m == "pap") {
      const auto asg = sol ? sol->sol.assignment : best_server_assignment(*inst->inst);
      return put_string(out, wnd::to_mps(wnd::scale_rows(wnd::build_pap(*inst->inst, asg), s)));
    }
    throw wnd::DomainError("unknown model \"" + m + "\" (expected pap or spap)");
  });
}

void wnd_solve_options_default(wnd_solve_options* options) {
  if (!options) return;
  const wnd::BnbOptions d;
  options->scale = "1";
  options->eps = d.eps;
  options->node_limit = d.node_limit;
  options->time_limit = d.time_limit;
  options->verification_mode = 0;
}

wnd_status wnd_solve_spap(const wnd_instance* inst, const wnd_solve_options* options,
                          wnd_solution** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(out);
  return guarded([&] {
    wnd_solve_options o;
    wnd_solve_options_default(&o);
    if (options) o = *options;
    const auto s = parse_scale(o.scale, "1");
    wnd::BnbOptions b;
    b.eps = o.eps;
    b.node_limit = o.node_limit;
    b.time_limit = o.time_limit;
    b.verification_mode = o.verification_mode != 0;
    auto result = wnd::solve_spap_bnb(wnd::scale_rows(wnd::build_spap(*inst->inst), s), b);
    result.solution.provenance.scale = wnd::format_rational(s);
    *out = new wnd_solution{inst->inst, std::move(result.solution)};
    return WND_OK;
  });
}

wnd_status wnd_solve_pap(const wnd_instance* inst, const wnd_solution* from,
                         const wnd_solve_options* options, wnd_solution** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(out);
  return guarded([&] {
    wnd_solve_options o;
    wnd_solve_options_default(&o);
    if (options) o = *options;
    const auto s = parse_scale(o.scale, "1");
    const auto& instance = *inst->inst;
    const auto asg = from ? from->sol.assignment : best_server_assignment(instance);
    const auto lp = wnd::scale_rows(wnd::build_pap(instance, asg), s);
    const auto fp = wnd::solve_lp_fp(lp, o.eps, 100000);
    wnd::Solution sol;
    sol.assignment = asg;
    sol.objective_claimed = wnd::assignment_revenue(instance, asg);
    sol.power = fp.status == wnd::FpStatus::kOptimal ? fp.point
                                                     : std::vector<double>(instance.num_transmitters(), 0.0);
    sol.provenance.solver = "simplex";
    sol.provenance.eps = o.eps;
    sol.provenance.scale = wnd::format_rational(s);
    sol.provenance.status = wnd::to_string(fp.status);
    *out = new wnd_solution{inst->inst, std::move(sol)};
    return WND_OK;
  });
}

wnd_status wnd_brute_force(const wnd_instance* inst, wnd_solution** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(out);
  return guarded([&] {
    auto result = wnd::brute_force_spap(*inst->inst);
    *out = new wnd_solution{inst->inst, std::move(result.solution)};
    return WND_OK;
  });
}

wnd_status wnd_solution_from_json(const wnd_instance* inst, const char* json, wnd_solution** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(json);
  WND_REQUIRE(out);
  return guarded([&] {
    *out = new wnd_solution{inst->inst, wnd::solution_from_json(*inst->inst, json)};
    return WND_OK;
  });
}

wnd_status wnd_solution_load(const wnd_instance* inst, const char* path, wnd_solution** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(path);
  WND_REQUIRE(out);
  return guarded([&] {
    *out = new wnd_solution{inst->inst, wnd::solution_from_json(*inst->inst, wnd::read_text_file(path))};
    return WND_OK;
  });
}

wnd_status wnd_solution_to_json(const wnd_solution* sol, char** out) {
  WND_REQUIRE(sol);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::solution_to_json(*sol->inst, sol->sol)); });
}

wnd_status wnd_solution_save(const wnd_solution* sol, const char* path) {
  WND_REQUIRE(sol);
  WND_REQUIRE(path);
  return guarded([&] {
    wnd::write_text_file(path, wnd::solution_to_json(*sol->inst, sol->sol));
    return WND_OK;
  });
}

wnd_status wnd_solution_status(const wnd_solution* sol, char** out) {
  WND_REQUIRE(sol);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, sol->sol.provenance.status); });
}

wnd_status wnd_solution_objective(const wnd_solution* sol, char** out) {
  WND_REQUIRE(sol);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::format_rational(sol->sol.objective_claimed)); });
}

size_t wnd_solution_served_count(const wnd_solution* sol) {
  return sol ? sol->sol.assignment.served_count() : 0;
}

wnd_status wnd_solution_power(const wnd_solution* sol, double* power, size_t length) {
  WND_REQUIRE(sol);
  WND_REQUIRE(power);
  return guarded([&] {
    const auto p = sol->sol.exact_power();
    if (length != p.size()) throw wnd::DomainError("power buffer has the wrong length");
    for (std::size_t t = 0; t < p.size(); ++t) power[t] = wnd::to_double_nearest(p[t]);
    return WND_OK;
  });
}

void wnd_solution_free(wnd_solution* sol) { delete sol; }

wnd_status wnd_audit(const wnd_instance* inst, const wnd_solution* sol, const char* serve_tol,
                     wnd_report** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(sol);
  WND_REQUIRE(out);
  return guarded([&] {
    const auto tol = wnd::parse_rational(serve_tol ? serve_tol : "1e-6");
    *out = new wnd_report{inst->inst, wnd::audit_solution(*inst->inst, sol->sol, tol)};
    return WND_OK;
  });
}

size_t wnd_report_claimed(const wnd_report* report) { return report ? report->report.claimed : 0; }
size_t wnd_report_served(const wnd_report* report) { return report ? report->report.served : 0; }
size_t wnd_report_unserved(const wnd_report* report) { return report ? report->report.unserved : 0; }

wnd_status wnd_report_max_linear_violation(const wnd_report* report, char** out) {
  WND_REQUIRE(report);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::format_rational(report->report.max_linear_violation)); });
}

wnd_status wnd_report_max_sir_violation(const wnd_report* report, char** out) {
  WND_REQUIRE(report);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::format_rational(report->report.max_sir_violation)); });
}

wnd_status wnd_report_to_json(const wnd_report* report, char** out) {
  WND_REQUIRE(report);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::report_to_json(*report->inst, report->report)); });
}

wnd_status wnd_report_table(const wnd_report* report, char** out) {
  WND_REQUIRE(report);
  WND_REQUIRE(out);
  return guarded([&] {
    return put_string(out, wnd::render_audit_table({report->report}) + "\n" +
                               wnd::render_receiver_table(*report->inst, report->report));
  });
}

void wnd_report_free(wnd_report* report) { delete report; }

wnd_status wnd_verify(const wnd_instance* inst, const wnd_solution* sol, wnd_verification** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(sol);
  WND_REQUIRE(out);
  return guarded([&] {
    auto result = wnd::verify_assignment_exact(*inst->inst, sol->sol.assignment);
    *out = new wnd_verification{inst->inst, sol->sol.assignment, std::move(result)};
    return WND_OK;
  });
}

int wnd_verification_feasible(const wnd_verification* v) {
  return v && v->result.status == wnd::VerificationStatus::kFeasible ? 1 : 0;
}

wnd_status wnd_verification_to_json(const wnd_verification* v, char** out) {
  WND_REQUIRE(v);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::verification_to_json(*v->inst, v->assignment, v->result)); });
}

wnd_status wnd_verification_apply(const wnd_verification* v, const wnd_solution* sol,
                                  wnd_solution** out) {
  WND_REQUIRE(v);
  WND_REQUIRE(sol);
  WND_REQUIRE(out);
  return guarded([&] {
    if (v->result.status != wnd::VerificationStatus::kFeasible) {
      throw wnd::DomainError("verification is infeasible; no power vector to apply");
    }
    if (!(v->assignment == sol->sol.assignment)) throw wnd::DomainError("solution has a different assignment");
    auto repaired = sol->sol;
    repaired.power_exact = v->result.power;
    repaired.power = wnd::to_doubles(v->result.power);
    repaired.provenance.note = "power from exact verification";
    *out = new wnd_solution{sol->inst, std::move(repaired)};
    return WND_OK;
  });
}

void wnd_verification_free(wnd_verification* v) { delete v; }

wnd_status wnd_refine(const wnd_instance* inst, const wnd_solution* sol, const char* tol,
                      size_t max_rounds, const char* scale, wnd_refinement** out) {
  WND_REQUIRE(inst);
  WND_REQUIRE(sol);
  WND_REQUIRE(tol);
  WND_REQUIRE(out);
  return guarded([&] {
    const auto s = parse_scale(scale, "1e12");
    const auto lp = wnd::scale_rows(wnd::build_pap(*inst->inst, sol->sol.assignment), s);
    auto result = wnd::refine_lp(lp, wnd::parse_rational(tol), max_rounds);
    *out = new wnd_refinement{inst->inst, std::move(result)};
    return WND_OK;
  });
}

int wnd_refinement_success(const wnd_refinement* r) {
  return r && r->result.status == wnd::RefineStatus::kSuccess ? 1 : 0;
}

size_t wnd_refinement_rounds(const wnd_refinement* r) { return r ? r->result.rounds : 0; }

wnd_status wnd_refinement_max_violation(const wnd_refinement* r, char** out) {
  WND_REQUIRE(r);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::format_rational(r->result.max_violation)); });
}

wnd_status wnd_refinement_to_json(const wnd_refinement* r, char** out) {
  WND_REQUIRE(r);
  WND_REQUIRE(out);
  return guarded([&] { return put_string(out, wnd::refine_to_json(r->result)); });
}

wnd_status wnd_refinement_apply(const wnd_refinement* r, const wnd_solution* sol, wnd_solution** out) {
  WND_REQUIRE(r);
  WND_REQUIRE(sol);
  WND_REQUIRE(out);
  return guarded([&] {
    if (r->result.point.size() != sol->inst->num_transmitters()) {
      throw wnd::DomainError("refinement has no power vector for this solution");
    }
    auto repaired = sol->sol;
    repaired.power_exact = r->result.point;
    repaired.power = wnd::to_doubles(r->result.point);
    repaired.provenance.note = "power from iterative refinement";
    *out = new wnd_solution{sol->inst, std::move(repaired)};
    return WND_OK;
  });
}

void wnd_refinement_free(wnd_refinement* r) { delete r; }

}  // extern "C"
