#include "wnd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wnd/errors.hpp"

namespace wnd {

#ifndef WND_VERSION_STRING
#define WND_VERSION_STRING "0.0.0"
#endif
const char* const kToolVersion = WND_VERSION_STRING;

using nlohmann::json;

namespace {

std::string num(const Rational& q) { return format_rational(q); }

Rational get_rational(const json& node, const char* what) {
  if (node.is_string()) return parse_rational(node.get<std::string>());
  if (node.is_number_integer()) return Rational(mpz_class(node.dump()));
  throw FormatError(std::string(what) + ": expected an exact number string");
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

std::string get_string(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_string()) throw FormatError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

json rational_array(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(num(v));
  return arr;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json doc;
  json meta = json::object();
  for (const auto& [k, v] : inst.meta()) meta[k] = v;
  doc["meta"] = meta;
  json tx = json::array();
  for (const auto& t : inst.transmitters()) tx.push_back({{"id", t.id}, {"pmax_mw", num(t.p_max)}});
  doc["transmitters"] = tx;
  json rx = json::array();
  for (const auto& r : inst.receivers()) {
    rx.push_back({{"id", r.id},
                  {"noise_mw", num(r.noise)},
                  {"delta", num(r.delta)},
                  {"revenue", num(r.revenue)}});
  }
  doc["receivers"] = rx;
  json fading = json::array();
  for (const auto& row : inst.fading_matrix()) fading.push_back(rational_array(row));
  doc["fading"] = fading;
  return doc.dump(1) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const json doc = parse(text);
  std::map<std::string, std::string> meta;
  if (doc.contains("meta")) {
    const auto& m = doc.at("meta");
    if (!m.is_object()) throw FormatError("\"meta\" must be an object");
    for (const auto& [k, v] : m.items()) meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  std::vector<Transmitter> tx;
  const auto& txs = field(doc, "transmitters");
  if (!txs.is_array()) throw FormatError("\"transmitters\" must be an array");
  for (const auto& t : txs) tx.push_back({get_string(t, "id"), get_rational(field(t, "pmax_mw"), "pmax_mw")});
  std::vector<Receiver> rx;
  const auto& rxs = field(doc, "receivers");
  if (!rxs.is_array()) throw FormatError("\"receivers\" must be an array");
  for (const auto& r : rxs) {
    Receiver rec{get_string(r, "id"), get_rational(field(r, "noise_mw"), "noise_mw"),
                 get_rational(field(r, "delta"), "delta"), Rational(1)};
    if (r.contains("revenue")) rec.revenue = get_rational(r.at("revenue"), "revenue");
    rx.push_back(std::move(rec));
  }
  std::vector<std::vector<Rational>> fading;
  const auto& fm = field(doc, "fading");
  if (!fm.is_array()) throw FormatError("\"fading\" must be an array of rows");
  for (const auto& row : fm) {
    if (!row.is_array()) throw FormatError("fading row must be an array");
    std::vector<Rational> values;
    for (const auto& a : row) values.push_back(get_rational(a, "fading"));
    fading.push_back(std::move(values));
  }
  return Instance(std::move(tx), std::move(rx), std::move(fading), std::move(meta));
}

std::string solution_to_json(const Instance& inst, const Solution& sol) {
  json doc;
  const auto& p = sol.provenance;
  doc["meta"] = {{"tool_version", kToolVersion},
                 {"solver", p.solver},
                 {"eps", num(rational_from_double(p.eps))},
                 {"scale", p.scale},
                 {"node_limit", p.node_limit},
                 {"time_limit", num(rational_from_double(p.time_limit))},
                 {"status", p.status},
                 {"note", p.note}};
  if (auto it = inst.meta().find("seed"); it != inst.meta().end()) doc["meta"]["seed"] = it->second;
  doc["objective_claimed"] = num(sol.objective_claimed);
  json power = json::object();
  for (std::size_t t = 0; t < sol.power.size(); ++t) {
    power[inst.transmitter(TransmitterIndex{t}).id] = num(rational_from_double(sol.power[t]));
  }
  doc["power"] = power;
  if (sol.power_exact) {
    json exact = json::object();
    for (std::size_t t = 0; t < sol.power_exact->size(); ++t) {
      exact[inst.transmitter(TransmitterIndex{t}).id] = num((*sol.power_exact)[t]);
    }
    doc["power_exact"] = exact;
  }
  json asg = json::array();
  for (const auto& [r, t] : sol.assignment.served_pairs()) {
    asg.push_back({{"receiver", inst.receiver(r).id}, {"transmitter", inst.transmitter(t).id}});
  }
  doc["assignment"] = asg;
  return doc.dump(1) + "\n";
}

namespace {

std::vector<Rational> read_power(const Instance& inst, const json& obj, const char* key) {
  const auto& node = field(obj, key);
  if (!node.is_object()) throw FormatError(std::string("\"") + key + "\" must map transmitter ids to values");
  std::vector<Rational> values(inst.num_transmitters(), Rational(0));
  std::vector<bool> seen(inst.num_transmitters(), false);
  for (const auto& [id, v] : node.items()) {
    const auto t = inst.transmitter_index(id);
    values[t.value] = get_rational(v, key);
    seen[t.value] = true;
  }
  for (std::size_t t = 0; t < seen.size(); ++t) {
    if (!seen[t]) throw FormatError(std::string("\"") + key + "\" lacks transmitter " + inst.transmitters()[t].id);
  }
  return values;
}

}  // namespace

Solution solution_from_json(const Instance& inst, const std::string& text) {
  const json doc = parse(text);
  Solution sol;
  if (doc.contains("meta") && doc.at("meta").is_object()) {
    const auto& m = doc.at("meta");
    auto& p = sol.provenance;
    if (m.contains("solver") && m.at("solver").is_string()) p.solver = m.at("solver").get<std::string>();
    if (m.contains("eps")) p.eps = to_double_nearest(get_rational(m.at("eps"), "eps"));
    if (m.contains("scale") && m.at("scale").is_string()) p.scale = m.at("scale").get<std::string>();
    if (m.contains("node_limit") && m.at("node_limit").is_number_unsigned()) {
      p.node_limit = m.at("node_limit").get<std::size_t>();
    }
    if (m.contains("time_limit")) p.time_limit = to_double_nearest(get_rational(m.at("time_limit"), "time_limit"));
    if (m.contains("status") && m.at("status").is_string()) p.status = m.at("status").get<std::string>();
    if (m.contains("note") && m.at("note").is_string()) p.note = m.at("note").get<std::string>();
  }
  const auto power = read_power(inst, doc, "power");
  sol.power = to_doubles(power);
  for (std::size_t t = 0; t < power.size(); ++t) {
    if (rational_from_double(sol.power[t]) != power[t]) {
      // Not a double: keep the exact value as the repaired vector.
      sol.power_exact = power;
      break;
    }
  }
  if (doc.contains("power_exact")) sol.power_exact = read_power(inst, doc, "power_exact");
  sol.assignment = Assignment(inst.num_receivers());
  const auto& asg = field(doc, "assignment");
  if (!asg.is_array()) throw FormatError("\"assignment\" must be an array");
  for (const auto& pair : asg) {
    sol.assignment.assign(inst.receiver_index(get_string(pair, "receiver")),
                          inst.transmitter_index(get_string(pair, "transmitter")));
  }
  sol.objective_claimed = doc.contains("objective_claimed")
                              ? get_rational(doc.at("objective_claimed"), "objective_claimed")
                              : assignment_revenue(inst, sol.assignment);
  return sol;
}

std::string report_to_json(const Instance& inst, const AuditReport& report) {
  json doc;
  doc["receivers"] = report.num_receivers;
  doc["transmitters"] = report.num_transmitters;
  doc["alpha_min"] = num(report.alpha_min);
  doc["alpha_max"] = num(report.alpha_max);
  doc["objective_claimed"] = num(report.objective_claimed);
  doc["claimed"] = report.claimed;
  doc["max_linear_violation"] = num(report.max_linear_violation);
  doc["max_sir_violation"] = num(report.max_sir_violation);
  doc["max_linear_violation_approx"] = approx_string(report.max_linear_violation, 3);
  doc["max_sir_violation_approx"] = approx_string(report.max_sir_violation, 3);
  doc["served"] = report.served;
  doc["unserved"] = report.unserved;
  doc["serve_tol"] = num(report.serve_tol);
  json rows = json::array();
  for (const auto& ra : report.per_receiver) {
    rows.push_back({{"receiver", inst.receiver(ra.receiver).id},
                    {"server", inst.transmitter(ra.server).id},
                    {"eps_linear", num(ra.eps_linear)},
                    {"eps_sir", num(ra.eps_sir)},
                    {"noise_plus_interference", num(ra.denominator)},
                    {"served", ra.served}});
  }
  doc["per_receiver"] = rows;
  return doc.dump(1) + "\n";
}

std::string verification_to_json(const Instance& inst, const Assignment& asg,
                                 const VerificationResult& result) {
  json doc;
  doc["status"] = to_string(result.status);
  doc["time"] = result.time;
  doc["pivots"] = result.pivots;
  doc["warm_start_used"] = result.warm_start_used;
  if (result.status == VerificationStatus::kFeasible) {
    json power = json::object();
    for (std::size_t t = 0; t < result.power.size(); ++t) {
      power[inst.transmitter(TransmitterIndex{t}).id] = num(result.power[t]);
    }
    doc["power"] = power;
  } else {
    // Multipliers of the SIR rows of the served receivers (>=-form).
    json cert = json::array();
    const auto pairs = asg.served_pairs();
    for (std::size_t i = 0; i < result.certificate.size(); ++i) {
      json entry = {{"multiplier", num(result.certificate[i])}};
      if (i < pairs.size()) {
        entry["receiver"] = inst.receiver(pairs[i].first).id;
        entry["transmitter"] = inst.transmitter(pairs[i].second).id;
      }
      cert.push_back(entry);
    }
    doc["certificate"] = cert;
  }
  return doc.dump(1) + "\n";
}

std::string refine_to_json(const RefineResult& result) {
  json doc;
  doc["status"] = to_string(result.status);
  doc["rounds"] = result.rounds;
  doc["max_violation"] = num(result.max_violation);
  doc["max_violation_approx"] = approx_string(result.max_violation, 3);
  json trace = json::array();
  for (const auto& v : result.per_round_violations) trace.push_back(num(v));
  doc["per_round_violations"] = trace;
  json scales = json::array();
  for (const auto& s : result.scale_factors) scales.push_back(num(s));
  doc["scale_factors"] = scales;
  if (!result.message.empty()) doc["message"] = result.message;
  return doc.dump(1) + "\n";
}

namespace {

std::string dbl(const Rational& q) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", to_double_nearest(q));
  return buf;
}

std::string mps_body(const LinearProgram& lp, const std::vector<bool>* binary,
                     const std::string& name) {
  std::ostringstream out;
  out << "* lossy export: coefficients rounded to double\n";
  out << "NAME " << name << "\n";
  if (lp.objective.sense == ObjectiveSense::kMaximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N obj\n";
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const char s = lp.rows[i].sense == Sense::kGreaterEqual ? 'G'
                   : lp.rows[i].sense == Sense::kLessEqual  ? 'L'
                                                            : 'E';
    out << ' ' << s << " c" << i << "\n";
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(lp.num_variables());
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    for (const auto& [j, v] : lp.rows[i].coefficients) cols[j].emplace_back(i, v);
  }
  std::vector<Rational> cost(lp.num_variables(), Rational(0));
  for (const auto& [j, v] : lp.objective.coefficients) cost[j] += v;
  out << "COLUMNS\n";
  bool in_int = false;
  std::size_t marker = 0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const bool is_int = binary && (*binary)[j];
    if (is_int != in_int) {
      out << " M" << marker++ << " 'MARKER' " << (is_int ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = is_int;
    }
    const std::string& var = lp.variables[j].name;
    if (sgn(cost[j]) != 0) out << ' ' << var << " obj " << dbl(cost[j]) << "\n";
    for (const auto& [i, v] : cols[j]) out << ' ' << var << " c" << i << ' ' << dbl(v) << "\n";
  }
  if (in_int) out << " M" << marker << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (sgn(lp.rows[i].rhs) != 0) out << " rhs c" << i << ' ' << dbl(lp.rows[i].rhs) << "\n";
  }
  out << "BOUNDS\n";
  for (const auto& v : lp.variables) {
    if (v.lower && v.upper && *v.lower == *v.upper) {
      out << " FX bnd " << v.name << ' ' << dbl(*v.lower) << "\n";
      continue;
    }
    if (!v.lower) {
      out << " MI bnd " << v.name << "\n";
    } else if (sgn(*v.lower) != 0) {
      out << " LO bnd " << v.name << ' ' << dbl(*v.lower) << "\n";
    }
    if (v.upper) out << " UP bnd " << v.name << ' ' << dbl(*v.upper) << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace

std::string to_mps(const LinearProgram& lp, const std::string& name) { return mps_body(lp, nullptr, name); }

std::string to_mps(const MipProblem& mip, const std::string& name) {
  return mps_body(mip.lp, &mip.is_binary, name);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace wnd
