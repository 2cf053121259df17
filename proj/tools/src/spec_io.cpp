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

#include "spec_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tkd::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where, what);
}

const json& need(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string sub(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}
std::string at(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

double decode_real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::size_t decode_count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    fail(where, "expected a positive integer");
  }
  return j.get<std::size_t>();
}

std::vector<ComplexMatrix> decode_matrix_list(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_matrix(j[i], at(where, i)));
  return out;
}

// A state is a matrix or {"pure": [amplitudes]}.
ComplexMatrix decode_state(const json& j, const std::string& where) {
  if (j.is_object()) {
    const auto& v = need(j, "pure", where);
    const std::string w = sub(where, "pure");
    if (!v.is_array() || v.empty()) fail(w, "expected a non-empty amplitude array");
    std::vector<cplx> psi;
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      psi.push_back(decode_scalar(v[i], at(w, i)));
      norm += std::norm(psi.back());
    }
    if (norm == 0.0) fail(w, "zero vector");
    ComplexMatrix m(psi.size(), psi.size());
    for (std::size_t r = 0; r < psi.size(); ++r)
      for (std::size_t c = 0; c < psi.size(); ++c) m(r, c) = psi[r] * std::conj(psi[c]) / norm;
    return m;
  }
  return decode_matrix(j, where);
}

ComplexMatrix decode_observable(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto n = j.get<std::string>();
    if (n == "I") return pauli::I();
    if (n == "X") return pauli::X();
    if (n == "Y") return pauli::Y();
    if (n == "Z") return pauli::Z();
    if (n == "H") return pauli::H();
    fail(where, "unknown named observable '" + n + "'");
  }
  return decode_matrix(j, where);
}

RawChannel parse_channel(const json& j, const std::string& where) {
  RawChannel c;
  c.where = where;
  const auto& kind = need(j, "kind", where);
  if (!kind.is_string()) fail(sub(where, "kind"), "expected a string");
  c.kind = kind.get<std::string>();
  if (c.kind == "identity") {
  } else if (c.kind == "unitary") {
    c.u = decode_matrix(need(j, "u", where), sub(where, "u"));
  } else if (c.kind == "kraus") {
    c.kraus = decode_matrix_list(need(j, "kraus", where), sub(where, "kraus"));
  } else if (c.kind == "replacement") {
    c.omega = decode_state(need(j, "omega", where), sub(where, "omega"));
  } else if (c.kind == "depolarizing") {
    c.p = decode_real(need(j, "p", where), sub(where, "p"));
  } else if (c.kind == "measure_replace") {
    if (j.contains("projectors")) {
      auto ps = decode_matrix_list(j["projectors"], sub(where, "projectors"));
      for (std::size_t k = 0; k < ps.size(); ++k)
        c.branches.push_back({std::to_string(k), {ps[k]}});
    } else {
      const std::string w = sub(where, "instrument");
      const auto& ins = need(j, "instrument", where);
      if (!ins.is_array() || ins.empty()) fail(w, "expected a non-empty array of branches");
      for (std::size_t k = 0; k < ins.size(); ++k) {
        InstrumentBranch b;
        b.label = ins[k].is_object() && ins[k].contains("label") && ins[k]["label"].is_string()
                      ? ins[k]["label"].get<std::string>()
                      : std::to_string(k);
        b.kraus = decode_matrix_list(need(ins[k], "kraus", at(w, k)), sub(at(w, k), "kraus"));
        c.branches.push_back(std::move(b));
      }
    }
    const std::string w = sub(where, "outputs");
    const auto& outs = need(j, "outputs", where);
    if (!outs.is_array() || outs.size() != c.branches.size()) {
      fail(w, "expected one output state per instrument branch");
    }
    for (std::size_t k = 0; k < outs.size(); ++k) c.outputs.push_back(decode_state(outs[k], at(w, k)));
  } else {
    fail(sub(where, "kind"), "unknown channel kind '" + c.kind + "'");
  }
  return c;
}

RawStep parse_step(const json& j, const std::string& where) {
  RawStep st;
  st.where = where;
  if (j.is_object() && j.contains("observable")) {
    st.observable = decode_observable(j["observable"], sub(where, "observable"));
    return st;
  }
  const std::string w = sub(where, "outcomes");
  const auto& outs = need(j, "outcomes", where);
  if (!outs.is_array() || outs.empty()) fail(w, "expected a non-empty array of outcomes");
  for (std::size_t i = 0; i < outs.size(); ++i) {
    st.values.push_back(decode_real(need(outs[i], "value", at(w, i)), sub(at(w, i), "value")));
    st.projectors.push_back(
        decode_matrix(need(outs[i], "projector", at(w, i)), sub(at(w, i), "projector")));
  }
  return st;
}

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Re-throws core errors with the field path in front, keeping the type.
template <class F>
auto anchored(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DimensionError& e) {
    throw DimensionError(where + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double default_tolerance() {
  if (const char* env = std::getenv("TKD_TOLERANCE")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultTolerance;
}

json encode(cplx z) { return json::array({z.real(), z.imag()}); }

json encode(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(encode(z));
  return a;
}

json encode(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(encode(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

cplx decode_scalar(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(where, "expected a number or an [re, im] pair");
}

ComplexMatrix decode_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of rows");
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].empty()) fail(at(where, r), "expected a non-empty row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) fail(at(where, r), "ragged matrix row");
  }
  ComplexMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = decode_scalar(j[r][c], at(at(where, r), c));
  return m;
}

ProcessSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_col(text, e.byte), "malformed JSON");
  }
  ProcessSpec s;
  s.hash = fnv1a64(text);
  s.tolerance = default_tolerance();

  const auto& fmt = need(doc, "format", "");
  if (!fmt.is_string() || fmt.get<std::string>() != kSpecFormat) {
    fail("format", std::string("expected \"") + kSpecFormat + "\"");
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    s.name = doc["name"].get<std::string>();
  }

  const auto& dims = need(doc, "dims", "");
  if (!dims.is_array() || dims.empty()) fail("dims", "expected a non-empty array");
  for (std::size_t i = 0; i < dims.size(); ++i) s.dims.push_back(decode_count(dims[i], at("dims", i)));

  s.initial_state = decode_state(need(doc, "initial_state", ""), "initial_state");
  if (s.initial_state.rows() != s.dims[0] || s.initial_state.cols() != s.dims[0]) {
    fail("initial_state", "shape does not match dims[0]");
  }

  const json empty = json::array();
  const json& chans = doc.contains("channels") ? doc["channels"] : empty;
  if (!chans.is_array()) fail("channels", "expected an array");
  if (chans.size() + 1 != s.dims.size()) {
    fail("channels", "expected " + std::to_string(s.dims.size() - 1) +
                         " channels for " + std::to_string(s.dims.size()) + " dims");
  }
  for (std::size_t k = 0; k < chans.size(); ++k) {
    s.channels.push_back(parse_channel(chans[k], at("channels", k)));
  }

  if (doc.contains("schedules")) {
    const auto& sch = doc["schedules"];
    if (!sch.is_object()) fail("schedules", "expected an object of named schedules");
    for (const auto& [name, steps] : sch.items()) {
      const std::string w = sub("schedules", name);
      if (!steps.is_array() || steps.size() != s.dims.size()) {
        fail(w, "expected " + std::to_string(s.dims.size()) + " steps");
      }
      RawSchedule rs{name, {}};
      for (std::size_t k = 0; k < steps.size(); ++k) rs.steps.push_back(parse_step(steps[k], at(w, k)));
      s.schedules.push_back(std::move(rs));
    }
  }

  if (doc.contains("options")) {
    const auto& o = doc["options"];
    if (!o.is_object()) fail("options", "expected an object");
    if (o.contains("tolerance")) {
      const double t = decode_real(o["tolerance"], "options.tolerance");
      if (!(t > 0.0)) fail("options.tolerance", "must be positive");
      s.tolerance = t;
    }
    if (o.contains("seed")) {
      if (!o["seed"].is_number_unsigned()) fail("options.seed", "expected a non-negative integer");
      s.seed = o["seed"].get<std::uint64_t>();
    }
  }
  return s;
}

ProcessSpec load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_spec(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), std::string(e.what()).substr(e.where().empty() ? 0 : e.where().size() + 2));
  }
}

DensityOperator build_initial_state(const ProcessSpec& s) {
  return anchored("initial_state", [&] { return DensityOperator(s.initial_state, s.tolerance); });
}

QuantumChannel build_spec_channel(const ProcessSpec& s, std::size_t k) {
  const RawChannel& c = s.channels.at(k - 1);
  const std::size_t d_in = s.dims[k - 1], d_out = s.dims[k];
  return anchored(c.where, [&] {
    QuantumChannel ch;
    if (c.kind == "identity") {
      ch = identity_channel(d_in);
    } else if (c.kind == "unitary") {
      ch = QuantumChannel({c.u});
      if (!c.u.is_square()) throw DimensionError("unitary must be square");
      require_cptp(ch, s.tolerance);
    } else if (c.kind == "kraus") {
      ch = QuantumChannel(c.kraus);
      require_cptp(ch, s.tolerance);
    } else if (c.kind == "replacement") {
      ch = build_channel(ReplacementParams{DensityOperator(c.omega, s.tolerance), d_in});
    } else if (c.kind == "depolarizing") {
      ch = build_channel(DepolarizingParams{d_in, c.p});
    } else {
      std::vector<DensityOperator> outs;
      for (const auto& o : c.outputs) outs.emplace_back(o, s.tolerance);
      ch = build_channel(MeasureReplaceParams{Instrument(c.branches, s.tolerance), outs});
    }
    if (ch.d_in() != d_in || ch.d_out() != d_out) {
      throw DimensionError("maps " + std::to_string(ch.d_in()) + " -> " +
                           std::to_string(ch.d_out()) + " but dims require " +
                           std::to_string(d_in) + " -> " + std::to_string(d_out));
    }
    return ch;
  });
}

MultiTimeProcess build_process(const ProcessSpec& s) {
  auto rho = build_initial_state(s);
  std::vector<QuantumChannel> chans;
  for (std::size_t k = 1; k < s.dims.size(); ++k) chans.push_back(build_spec_channel(s, k));
  return MultiTimeProcess(std::move(rho), std::move(chans), s.tolerance);
}

const RawSchedule& find_schedule(const ProcessSpec& s, const std::string& name) {
  if (s.schedules.empty()) throw ParseError("schedules", "spec defines no measurement schedules");
  if (name.empty()) return s.schedules.front();
  for (const auto& r : s.schedules)
    if (r.name == name) return r;
  throw ParseError("schedules", "no schedule named '" + name + "'");
}

MeasurementSchedule build_schedule(const ProcessSpec& s, const std::string& name) {
  const RawSchedule& r = find_schedule(s, name);
  MeasurementSchedule out;
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const RawStep& st = r.steps[k];
    out.push_back(anchored(st.where, [&] {
      ProjectiveMeasurement m = st.observable ? spectral_measurement(*st.observable)
                                              : measurement_from_projectors(st.values, st.projectors);
      if (m.dim() != s.dims[k]) {
        throw DimensionError("acts on dimension " + std::to_string(m.dim()) + ", dims[" +
                             std::to_string(k) + "] is " + std::to_string(s.dims[k]));
      }
      return m;
    }));
  }
  return out;
}

}  // namespace tkd::cli
