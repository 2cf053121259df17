// Copyright 2026 The tempkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bundled_specs.hpp"

namespace tkd::cli {

namespace {

const char* block_name(Block b) {
  switch (b) {
    case Block::ket: return "ket";
    case Block::bra: return "bra";
    default: return "single";
  }
}

json axes_json(const std::vector<OutcomeAxis>& axes) {
  json a = json::array();
  for (const auto& ax : axes) {
    a.push_back({{"time", ax.time}, {"block", block_name(ax.block)}, {"values", ax.values}});
  }
  return a;
}

json dist_json(const QuasiDistribution& q) {
  return {{"kind", to_string(q.kind())}, {"axes", axes_json(q.axes())}, {"values", encode(q.values())}};
}

json header(const ProcessSpec& s, const std::string& command, const json& request) {
  json doc;
  doc["format"] = kResultFormat;
  doc["command"] = command;
  doc["spec"] = {{"name", s.name}, {"hash", s.hash}};
  doc["request"] = request;
  return doc;
}

std::string req_string(const json& r, const char* key, const std::string& fallback = "") {
  if (!r.contains(key) || r[key].is_null()) return fallback;
  if (!r[key].is_string()) throw ParseError(std::string("request.") + key, "expected a string");
  return r[key].get<std::string>();
}

void require_member(const std::string& v, std::initializer_list<const char*> allowed,
                    const char* field) {
  for (const char* a : allowed)
    if (v == a) return;
  throw ParseError(std::string("request.") + field, "unsupported value '" + v + "'");
}

CharPoint decode_point(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of phases");
  CharPoint p;
  for (const auto& x : j) {
    if (!x.is_number()) throw ParseError(where, "expected numeric phases");
    p.push_back(x.get<double>());
  }
  return p;
}

// Fills defaults so that the stored request alone reproduces the result.
json normalize(const ProcessSpec& s, const std::string& command, const json& in) {
  json r = json::object();
  const bool uses_schedule = command == "dist" || command == "nonclassicality" ||
                             command == "witness" || command == "charfn" ||
                             command == "circuit-sim";
  if (command == "dist" || command == "nonclassicality") {
    r["kind"] = req_string(in, "kind", "right");
    require_member(r["kind"], {"right", "left", "doubled", "mh", "lvn"}, "kind");
  } else if (command == "state") {
    r["kind"] = req_string(in, "kind", "kd-right");
    require_member(r["kind"], {"kd-right", "kd-left", "doubled", "mh", "pdo"}, "kind");
  } else if (command == "charfn" || command == "circuit-sim") {
    r["kind"] = req_string(in, "kind", "right");
    require_member(r["kind"], {"right", "left", "doubled"}, "kind");
  }
  if (uses_schedule) {
    r["schedule"] = find_schedule(s, req_string(in, "schedule")).name;
    if (r.contains("kind") && r["kind"] == "doubled") {
      r["bra_schedule"] = find_schedule(s, req_string(in, "bra_schedule", r["schedule"])).name;
    }
  }
  if (command == "nonclassicality") {
    r["variant"] = req_string(in, "variant", "linear");
    require_member(r["variant"], {"linear", "log"}, "variant");
  }
  if (command == "charfn") {
    if (in.contains("points") && in["points"].is_array()) {
      json pts = json::array();
      for (std::size_t i = 0; i < in["points"].size(); ++i) {
        pts.push_back(decode_point(in["points"][i], "request.points[" + std::to_string(i) + "]"));
      }
      r["points"] = pts;
    } else {
      r["points"] = "default";
    }
  }
  if (command == "circuit-sim") {
    if (!in.contains("point")) throw ParseError("request.point", "missing phase point");
    r["point"] = decode_point(in["point"], "request.point");
    r["shots"] = in.contains("shots") ? in["shots"] : json(nullptr);
    if (!r["shots"].is_null() && !r["shots"].is_number_unsigned()) {
      throw ParseError("request.shots", "expected a non-negative integer");
    }
    r["seed"] = in.contains("seed") && !in["seed"].is_null() ? in["seed"] : json(s.seed);
    if (!r["seed"].is_number_unsigned()) throw ParseError("request.seed", "expected a non-negative integer");
  }
  return r;
}

QuasiDistribution dist_for(const MultiTimeProcess& p, const ProcessSpec& s, const json& r) {
  const std::string kind = r["kind"];
  const auto sch = build_schedule(s, r["schedule"]);
  if (kind == "right") return kd_right(p, sch);
  if (kind == "left") return kd_left(p, sch);
  if (kind == "mh") return mh(p, sch);
  if (kind == "lvn") return lvn(p, sch);
  return kd_doubled(p, sch, build_schedule(s, r["bra_schedule"]));
}

CharKind char_kind(const std::string& k) {
  if (k == "left") return CharKind::left;
  if (k == "doubled") return CharKind::doubled;
  return CharKind::right;
}

// Right functions read B_k (bra), left ones A_k (ket); the doubled function
// takes A_k from the schedule and B_k from the bra schedule.
ObservableSchedule observables_for(const ProcessSpec& s, const json& r) {
  ObservableSchedule o;
  const auto sch = build_schedule(s, r["schedule"]);
  const auto kind = char_kind(r["kind"]);
  for (const auto& m : sch) {
    if (kind == CharKind::right) o.bra.push_back(m.observable());
    else o.ket.push_back(m.observable());
  }
  if (kind == CharKind::doubled) {
    for (const auto& m : build_schedule(s, r["bra_schedule"])) o.bra.push_back(m.observable());
  }
  return o;
}

std::vector<std::vector<double>> spectra_for(const ObservableSchedule& o, CharKind kind) {
  std::vector<std::vector<double>> out;
  auto add = [&](const std::vector<ComplexMatrix>& obs) {
    for (const auto& m : observable_schedule(obs)) out.push_back(m.values());
  };
  if (kind == CharKind::right) add(o.bra);
  else add(o.ket);
  if (kind == CharKind::doubled) add(o.bra);
  return out;
}

TemporalStateOperator state_for(const MultiTimeProcess& p, const std::string& kind) {
  if (kind == "kd-right") return kd_state_recursive(p, StateKind::kd_right);
  if (kind == "kd-left") return kd_state_recursive(p, StateKind::kd_left);
  if (kind == "mh") return mh_state(kd_state_recursive(p, StateKind::kd_right));
  if (kind == "pdo") return pdo(p);
  const auto b = default_bases(p);
  return reconstruct_state(correlators(p, b, CorrelatorKind::doubled), b);
}

json state_payload(const TemporalStateOperator& y, double tol) {
  json f = json::array();
  for (const auto& fac : y.factors) {
    f.push_back({{"time", fac.time}, {"block", block_name(fac.block)}, {"dim", fac.dim}});
  }
  json out;
  out["kind"] = to_string(y.kind);
  out["factors"] = f;
  out["matrix"] = encode(y.matrix);
  const bool herm = is_hermitian(y.matrix, tol);
  json summary;
  summary["trace"] = encode(y.matrix.trace());
  summary["hermitian"] = herm;
  ComplexMatrix h = y.matrix;
  if (!herm) h = 0.5 * (y.matrix + y.matrix.adjoint());
  const auto ev = eigenvalues_hermitian(h);
  double neg = 0.0;
  for (double x : ev)
    if (x < 0) neg -= x;
  summary[herm ? "eigenvalues" : "hermitian_part_eigenvalues"] = ev;
  summary["min_eigenvalue"] = ev.front();
  summary["max_eigenvalue"] = ev.back();
  summary["negativity"] = neg;
  out["eigen_summary"] = summary;
  return out;
}

json validate_doc(const ProcessSpec& s) {
  json doc = header(s, "validate", json::object());
  json rep = validation_report(s);
  doc["report"] = rep;
  doc["diagnostics"] = {{"tolerance", s.tolerance}};
  return doc;
}

}  // namespace

json validation_report(const ProcessSpec& s) {
  const double tol = s.tolerance;
  bool all_ok = true;
  json rep;

  {
    const ComplexMatrix& m = s.initial_state;
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    const double herm = max_abs_diff(m, m.adjoint());
    const double tr = std::abs(m.trace() - 1.0);
    const double mn = eigenvalues_hermitian(h).front();
    const bool ok = herm <= tol && tr <= tol && mn >= -tol;
    all_ok = all_ok && ok;
    rep["initial_state"] = {{"dim", m.rows()},
                            {"hermiticity_defect", herm},
                            {"trace_defect", tr},
                            {"min_eigenvalue", mn},
                            {"ok", ok}};
  }

  json chans = json::array();
  for (std::size_t k = 1; k <= s.channels.size(); ++k) {
    const RawChannel& raw = s.channels[k - 1];
    json c = {{"index", k}, {"kind", raw.kind}, {"d_in", s.dims[k - 1]}, {"d_out", s.dims[k]}};
    try {
      const auto ch = build_spec_channel(s, k);
      c["kraus_count"] = ch.kraus().size();
      c["tp_defect"] = validate_cptp(ch, tol).defect;
      c["ok"] = true;
    } catch (const std::exception& e) {
      if (raw.kind == "kraus" || raw.kind == "unitary") {
        try {
          const QuantumChannel ch(raw.kind == "kraus" ? raw.kraus : std::vector{raw.u});
          c["kraus_count"] = ch.kraus().size();
          c["tp_defect"] = validate_cptp(ch, tol).defect;
        } catch (const std::exception&) {
        }
      }
      c["ok"] = false;
      c["error"] = e.what();
      all_ok = false;
    }
    chans.push_back(std::move(c));
  }
  rep["channels"] = chans;

  json sched = json::array();
  for (const auto& rs : s.schedules) {
    json e = {{"name", rs.name}};
    try {
      const auto m = build_schedule(s, rs.name);
      json sizes = json::array();
      for (const auto& pm : m) sizes.push_back(pm.size());
      e["outcome_counts"] = sizes;
      e["ok"] = true;
    } catch (const std::exception& ex) {
      e["ok"] = false;
      e["error"] = ex.what();
      all_ok = false;
    }
    sched.push_back(std::move(e));
  }
  rep["schedules"] = sched;
  rep["ok"] = all_ok;
  return rep;
}

json compute(const ProcessSpec& s, const std::string& command, const json& request) {
  if (command == "validate") return validate_doc(s);
  const json r = normalize(s, command, request);
  json doc = header(s, command, r);
  json diag = {{"tolerance", s.tolerance}};

  const auto p = build_process(s);
  if (command == "dist") {
    const auto q = dist_for(p, s, r);
    const json payload = dist_json(q);
    for (const auto& [k, v] : payload.items()) doc[k] = v;
    diag["normalization_defect"] = std::abs(q.total() - 1.0);
    diag["nonclassicality"] = nonclassicality(q);
  } else if (command == "nonclassicality") {
    const auto q = dist_for(p, s, r);
    const auto v = r["variant"] == "log" ? NcVariant::log : NcVariant::linear;
    doc["kind"] = to_string(q.kind());
    doc["nonclassicality"] = nonclassicality(q, v);
    diag["normalization_defect"] = std::abs(q.total() - 1.0);
  } else if (command == "witness") {
    const auto sch = build_schedule(s, r["schedule"]);
    const auto w = classicality_witness(p, sch);
    doc["nonclassicality"] = w.nonclassicality;
    doc["max_commutator_norm"] = w.max_commutator_norm;
    doc["worst_pair"] = {{"family", w.worst_pair.family},
                         {"level", w.worst_pair.level},
                         {"tuple", w.worst_pair.tuple}};
    doc["classical"] = is_classical(kd_right(p, sch));
  } else if (command == "state") {
    const auto y = state_for(p, r["kind"]);
    const json payload = state_payload(y, s.tolerance);
    for (const auto& [k, v] : payload.items()) doc[k] = v;
  } else if (command == "charfn") {
    const auto kind = char_kind(r["kind"]);
    const auto obs = observables_for(s, r);
    std::vector<CharPoint> grid;
    if (r["points"].is_string()) {
      grid = tensor_grid(default_nodes(spectra_for(obs, kind)));
      doc["spectra"] = spectra_for(obs, kind);
    } else {
      for (const auto& pt : r["points"]) grid.push_back(pt.get<CharPoint>());
    }
    const auto cs = char_fn(p, obs, grid, kind);
    doc["kind"] = to_string(kind);
    doc["grid"] = cs.grid;
    doc["values"] = encode(cs.values);
  } else if (command == "circuit-sim") {
    const auto kind = char_kind(r["kind"]);
    const auto obs = observables_for(s, r);
    const CharPoint pt = r["point"].get<CharPoint>();
    CircuitOptions opt;
    if (!r["shots"].is_null()) opt.shots = r["shots"].get<std::uint64_t>();
    opt.seed = r["seed"].get<std::uint64_t>();
    const auto res = circuit_sim(p, obs, pt, kind, opt);
    const cplx direct = char_value(p, obs, pt, kind);
    doc["kind"] = to_string(kind);
    doc["point"] = pt;
    doc["circuit"] = encode(res.exact);
    doc["char_fn"] = encode(direct);
    doc["estimate"] = res.estimate ? encode(*res.estimate) : json(nullptr);
    doc["standard_error"] = json::array({res.se_re, res.se_im});
    doc["shots"] = {{"x", res.shots_x}, {"y", res.shots_y}};
    doc["convention"] = {{"readout_sign", res.readout_sign},
                         {"gate_phase_sign", res.gate_phase_sign}};
    doc["register_dim"] = res.register_dim;
    diag["circuit_deviation"] = std::abs(res.exact - direct);
    diag["seed"] = opt.seed;
  } else {
    throw ParseError("command", "unknown command '" + command + "'");
  }
  doc["diagnostics"] = diag;
  return doc;
}

// ---------------------------------------------------------------- demos

std::vector<std::string> demo_names() { return {"xy-qubit", "replacement", "measure-replace"}; }

std::string_view bundled_spec(const std::string& name) {
  if (name == "xy-qubit") return generated::kXyQubitSpec;
  if (name == "replacement") return generated::kReplacementSpec;
  if (name == "measure-replace") return generated::kMeasureReplaceSpec;
  throw ParseError("demo", "unknown demo '" + name + "'");
}

namespace {

json check(const std::string& name, double deviation, double tol) {
  return {{"name", name}, {"deviation", deviation}, {"tolerance", tol}, {"pass", deviation <= tol}};
}

double max_dev(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

json run_demo(const std::string& name) {
  const ProcessSpec s = parse_spec(bundled_spec(name));
  const auto p = build_process(s);
  const auto sch = build_schedule(s, "");
  const auto q = kd_right(p, sch);
  const double nc = nonclassicality(q);

  json doc;
  doc["format"] = kResultFormat;
  doc["command"] = "demo";
  doc["demo"] = name;
  doc["spec"] = {{"name", s.name}, {"hash", s.hash}};
  doc["distribution"] = dist_json(q);
  doc["nonclassicality"] = nc;
  json checks = json::array();

  if (name == "xy-qubit") {
    const cplx i{0.0, 1.0};
    const std::vector<cplx> want{(1.0 + i) / 4.0, (1.0 - i) / 4.0, (1.0 - i) / 4.0,
                                 (1.0 + i) / 4.0};
    doc["expected"] = encode(want);
    doc["expected_nonclassicality"] = std::sqrt(2.0) - 1.0;
    checks.push_back(check("table", max_dev(q.values(), want), 1e-12));
    checks.push_back(check("nonclassicality", std::abs(nc - (std::sqrt(2.0) - 1.0)), 1e-12));
  } else if (name == "replacement") {
    // Q(b0, b1) = p_t0(b0) p_t1(b1) with p_t1 read off the replacement state.
    const ComplexMatrix& omega = s.channels.at(0).omega;
    std::vector<cplx> p0, p1, want;
    for (const auto& o : sch[0].outcomes()) p0.push_back(trace_product(s.initial_state, o.projector));
    for (const auto& o : sch[1].outcomes()) p1.push_back(trace_product(omega, o.projector));
    for (const auto& a : p0)
      for (const auto& b : p1) want.push_back(a * b);
    doc["marginals"] = {{"t0", encode(p0)}, {"t1", encode(p1)}};
    doc["expected"] = encode(want);
    checks.push_back(check("factorization", max_dev(q.values(), want), 1e-12));
    checks.push_back(check("nonclassicality_zero", std::abs(nc), 1e-14));
  } else {
    // Extended t0 distribution Q0(b0, k) = Tr M_k(rho Pi_b0) and
    // Q(b0, b1) = sum_k Tr(Pi_b1 omega_k) Q0(b0, k).
    const RawChannel& c = s.channels.at(0);
    const std::size_t m0 = sch[0].size(), m1 = sch[1].size(), K = c.branches.size();
    std::vector<cplx> q0(m0 * K);
    for (std::size_t b0 = 0; b0 < m0; ++b0)
      for (std::size_t k = 0; k < K; ++k) {
        const ComplexMatrix x = s.initial_state * sch[0][b0].projector;
        cplx acc = 0.0;
        for (const auto& e : c.branches[k].kraus) acc += (e * x * e.adjoint()).trace();
        q0[b0 * K + k] = acc;
      }
    std::vector<cplx> want(m0 * m1);
    for (std::size_t b0 = 0; b0 < m0; ++b0)
      for (std::size_t b1 = 0; b1 < m1; ++b1)
        for (std::size_t k = 0; k < K; ++k)
          want[b0 * m1 + b1] += trace_product(sch[1][b1].projector, c.outputs[k]) * q0[b0 * K + k];
    const double nc0 = nonclassicality(std::span<const cplx>(q0));
    doc["extended_t0"] = {{"shape", json::array({m0, K})}, {"values", encode(q0)}};
    doc["extended_nonclassicality"] = nc0;
    doc["expected"] = encode(want);
    checks.push_back(check("factorization", max_dev(q.values(), want), 1e-10));
    checks.push_back(check("nonclassicality_equality", std::abs(nc - nc0), 1e-10));
  }
  bool ok = true;
  for (const auto& c : checks) ok = ok && c["pass"].get<bool>();
  doc["checks"] = checks;
  doc["ok"] = ok;
  return doc;
}

// ---------------------------------------------------------------- verify

namespace {

bool same(const json& a, const json& b, double tol, double& dev, std::string& where,
          const std::string& path) {
  if (a.is_number() && b.is_number()) {
    const double d = std::abs(a.get<double>() - b.get<double>());
    dev = std::max(dev, d);
    if (!(d <= tol)) {
      where = path;
      return false;
    }
    return true;
  }
  if (a.type() != b.type()) {
    where = path;
    return false;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) {
      where = path;
      return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same(a[i], b[i], tol, dev, where, path + "[" + std::to_string(i) + "]")) return false;
    return true;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) {
      where = path;
      return false;
    }
    auto ib = b.begin();
    for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
      if (ia.key() != ib.key()) {
        where = path + "." + ia.key();
        return false;
      }
      if (!same(ia.value(), ib.value(), tol, dev, where, path + "." + ia.key())) return false;
    }
    return true;
  }
  if (a != b) where = path;
  return a == b;
}

}  // namespace

VerifyOutcome verify_result(const json& doc, const ProcessSpec& spec_in) {
  VerifyOutcome out;
  if (!doc.is_object() || doc.value("format", "") != kResultFormat) {
    throw ParseError("format", std::string("expected \"") + kResultFormat + "\"");
  }
  if (!doc.contains("command") || !doc["command"].is_string()) {
    throw ParseError("command", "missing command");
  }
  const std::string cmd = doc["command"];
  if (!doc.contains("spec") || doc["spec"].value("hash", "") != spec_in.hash) {
    out.reason = "spec hash mismatch";
    return out;
  }
  ProcessSpec s = spec_in;
  json fresh;
  if (cmd == "demo") {
    out.tolerance = 0.0;
    fresh = run_demo(doc.value("demo", ""));
  } else {
    if (!doc.contains("diagnostics") || !doc["diagnostics"].contains("tolerance") ||
        !doc["diagnostics"]["tolerance"].is_number()) {
      throw ParseError("diagnostics.tolerance", "missing recorded tolerance");
    }
    s.tolerance = doc["diagnostics"]["tolerance"].get<double>();
    out.tolerance = s.tolerance;
    fresh = compute(s, cmd, doc.value("request", json::object()));
  }
  std::string where;
  out.ok = same(doc, fresh, out.tolerance, out.max_deviation, where, "$");
  if (!out.ok) out.reason = "mismatch at " + where;
  return out;
}

// ---------------------------------------------------------------- csv

std::string distribution_csv(const json& doc) {
  std::ostringstream os;
  const auto& axes = doc.at("axes");
  for (const auto& ax : axes) {
    const std::string b = ax.at("block");
    os << (b == "single" ? "" : b + "_") << "t" << ax.at("time").get<std::size_t>() << ",";
  }
  os << "re,im\n";
  std::vector<std::size_t> shape;
  for (const auto& ax : axes) shape.push_back(ax.at("values").size());
  const auto& vals = doc.at("values");
  char buf[64];
  for (std::size_t f = 0; f < vals.size(); ++f) {
    std::size_t rem = f;
    std::vector<std::size_t> idx(shape.size());
    for (std::size_t a = shape.size(); a-- > 0;) {
      idx[a] = rem % shape[a];
      rem /= shape[a];
    }
    for (std::size_t a = 0; a < shape.size(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g,", axes[a]["values"][idx[a]].get<double>());
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", vals[f][0].get<double>(),
                  vals[f][1].get<double>());
    os << buf;
  }
  return os.str();
}

// ---------------------------------------------------------------- CLI

namespace {

std::optional<double> parse_double(const std::string& t) {
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0') return std::nullopt;
  return v;
}

CharPoint parse_point_arg(const std::string& text) {
  CharPoint p;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto v = parse_double(tok);
    if (!v) throw CLI::ValidationError("--point", "not a number: '" + tok + "'");
    p.push_back(*v);
  }
  if (p.empty()) throw CLI::ValidationError("--point", "empty phase point");
  return p;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, std::string("malformed JSON at byte ") + std::to_string(e.byte));
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tkd: temporal Kirkwood-Dirac quasiprobability toolkit", "tkd"};
  app.require_subcommand(1);

  std::string spec_path, result_path, kind, schedule, bra_schedule, variant = "linear",
                                                                     format = "json", demo;
  std::vector<std::string> points;
  std::optional<std::uint64_t> shots, seed;
  std::optional<double> tolerance;

  auto add_spec = [&](CLI::App* c) {
    c->add_option("spec", spec_path, "process spec file (tkd-process/1)")->required();
    c->add_option("--tolerance", tolerance, "override the spec tolerance");
  };
  auto add_sched = [&](CLI::App* c) {
    c->add_option("--schedule", schedule, "measurement schedule name (default: first)");
    c->add_option("--bra-schedule", bra_schedule, "bra-side schedule for doubled kinds");
  };
  const std::vector<std::string> dist_kinds{"right", "left", "doubled", "mh", "lvn"};
  const std::vector<std::string> char_kinds{"right", "left", "doubled"};

  auto* v = app.add_subcommand("validate", "check state, channels and schedules");
  add_spec(v);

  auto* d = app.add_subcommand("dist", "temporal quasiprobability distribution");
  add_spec(d);
  add_sched(d);
  d->add_option("--kind", kind, "distribution kind")->required()->check(CLI::IsMember(dist_kinds));
  d->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* n = app.add_subcommand("nonclassicality", "sum |Q| - 1 (or log sum |Q|)");
  add_spec(n);
  add_sched(n);
  n->add_option("--kind", kind, "distribution kind")->required()->check(CLI::IsMember(dist_kinds));
  n->add_option("--variant", variant, "linear or log")->check(CLI::IsMember({"linear", "log"}));

  auto* w = app.add_subcommand("witness", "nonclassicality and commutator witness");
  add_spec(w);
  w->add_option("--schedule", schedule, "measurement schedule name (default: first)");

  auto* st = app.add_subcommand("state", "temporal state operator");
  add_spec(st);
  st->add_option("--kind", kind, "state kind")
      ->required()
      ->check(CLI::IsMember({"kd-right", "kd-left", "doubled", "mh", "pdo"}));

  auto* cf = app.add_subcommand("charfn", "characteristic function samples");
  add_spec(cf);
  add_sched(cf);
  cf->add_option("--kind", kind, "right, left or doubled")->required()->check(CLI::IsMember(char_kinds));
  cf->add_option("--point", points, "comma-separated phases, repeatable (default: inversion grid)");

  auto* cs = app.add_subcommand("circuit-sim", "interferometric circuit for one phase point");
  add_spec(cs);
  add_sched(cs);
  cs->add_option("--kind", kind, "right, left or doubled")->required()->check(CLI::IsMember(char_kinds));
  cs->add_option("--point", points, "comma-separated phases")->required()->expected(1);
  cs->add_option("--shots", shots, "number of ancilla shots");
  cs->add_option("--seed", seed, "shot sampling seed (default: spec options.seed)");

  auto* dm = app.add_subcommand("demo", "bundled worked examples");
  dm->add_option("name", demo, "xy-qubit, replacement or measure-replace")
      ->required()
      ->check(CLI::IsMember(demo_names()));
  bool print_spec = false;
  dm->add_flag("--print-spec", print_spec, "print the bundled spec instead of running it");

  auto* vr = app.add_subcommand("verify", "recompute a result document and compare");
  vr->add_option("result", result_path, "result document (tkd-result/1)")->required();
  vr->add_option("spec", spec_path, "spec the result was computed from (not needed for demos)");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (dm->parsed()) {
      if (print_spec) {
        out << bundled_spec(demo);
        return kOk;
      }
      const json doc = run_demo(demo);
      emit(out, doc);
      return doc["ok"].get<bool>() ? kOk : kValidation;
    }
    if (vr->parsed()) {
      const json doc = read_json_file(result_path);
      ProcessSpec s;
      if (!spec_path.empty()) s = load_spec_file(spec_path);
      else if (doc.value("command", "") == "demo") s = parse_spec(bundled_spec(doc.value("demo", "")));
      else throw ParseError("spec", "a spec file is required for non-demo results");
      const auto r = verify_result(doc, s);
      json o;
      o["format"] = "tkd-verify/1";
      o["ok"] = r.ok;
      o["max_deviation"] = r.max_deviation;
      o["tolerance"] = r.tolerance;
      if (!r.ok) o["reason"] = r.reason;
      emit(out, o);
      return r.ok ? kOk : kValidation;
    }

    ProcessSpec s = load_spec_file(spec_path);
    if (tolerance) {
      if (!(*tolerance > 0.0)) throw CLI::ValidationError("--tolerance", "must be positive");
      s.tolerance = *tolerance;
    }
    if (v->parsed()) {
      const json doc = compute(s, "validate", json::object());
      emit(out, doc);
      return doc["report"]["ok"].get<bool>() ? kOk : kValidation;
    }

    json req = json::object();
    if (!kind.empty()) req["kind"] = kind;
    if (!schedule.empty()) req["schedule"] = schedule;
    if (!bra_schedule.empty()) req["bra_schedule"] = bra_schedule;
    std::string cmd;
    if (d->parsed()) cmd = "dist";
    else if (n->parsed()) {
      cmd = "nonclassicality";
      req["variant"] = variant;
    }
    else if (w->parsed()) cmd = "witness";
    else if (st->parsed()) cmd = "state";
    else if (cf->parsed()) {
      cmd = "charfn";
      if (!points.empty()) {
        json pts = json::array();
        for (const auto& p : points) pts.push_back(parse_point_arg(p));
        req["points"] = pts;
      }
    } else {
      cmd = "circuit-sim";
      req["point"] = parse_point_arg(points.at(0));
      if (shots) req["shots"] = *shots;
      if (seed) req["seed"] = *seed;
    }
    const json doc = compute(s, cmd, req);
    if (cmd == "dist" && format == "csv") {
      out << distribution_csv(doc);
    } else {
      emit(out, doc);
    }
    return kOk;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const DimensionError& e) {
    err << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace tkd::cli
