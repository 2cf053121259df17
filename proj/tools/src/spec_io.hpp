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

#ifndef TKD_TOOLS_SPEC_IO_HPP
#define TKD_TOOLS_SPEC_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tkd/tkd.hpp"

namespace tkd::cli {

using json = nlohmann::ordered_json;

constexpr const char* kSpecFormat = "tkd-process/1";
constexpr const char* kResultFormat = "tkd-result/1";
constexpr double kDefaultTolerance = 1e-9;

// Channel entry as written in the spec; numerics are validated when built.
struct RawChannel {
  std::string kind;
  std::string where;  // field path, e.g. channels[1]
  ComplexMatrix u;
  ComplexMatrix omega;
  double p = 0.0;
  std::vector<ComplexMatrix> kraus;
  std::vector<InstrumentBranch> branches;
  std::vector<ComplexMatrix> outputs;
};

struct RawStep {
  std::string where;
  std::optional<ComplexMatrix> observable;
  std::vector<double> values;
  std::vector<ComplexMatrix> projectors;
};

struct RawSchedule {
  std::string name;
  std::vector<RawStep> steps;
};

struct ProcessSpec {
  std::string name;
  std::string hash;  // "fnv1a64:<16 hex digits>" of the source bytes
  std::vector<std::size_t> dims;
  ComplexMatrix initial_state;
  std::vector<RawChannel> channels;
  std::vector<RawSchedule> schedules;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
};

std::string fnv1a64(std::string_view bytes);

// Tolerance used when a spec does not set one: TKD_TOLERANCE if it parses as
// a positive number, else kDefaultTolerance.
double default_tolerance();

// Structural parse. Throws ParseError with a line:column or field anchor.
ProcessSpec parse_spec(std::string_view text);
ProcessSpec load_spec_file(const std::string& path);

// Numerical construction. Throws ValidationError / DimensionError prefixed
// with the offending field.
DensityOperator build_initial_state(const ProcessSpec& s);
QuantumChannel build_spec_channel(const ProcessSpec& s, std::size_t k);  // k is 1-based
MultiTimeProcess build_process(const ProcessSpec& s);
const RawSchedule& find_schedule(const ProcessSpec& s, const std::string& name);
MeasurementSchedule build_schedule(const ProcessSpec& s, const std::string& name);

// JSON encodings shared by every document.
json encode(cplx z);
json encode(const std::vector<cplx>& v);
json encode(const ComplexMatrix& m);
cplx decode_scalar(const json& j, const std::string& where);
ComplexMatrix decode_matrix(const json& j, const std::string& where);

}  // namespace tkd::cli

#endif  // TKD_TOOLS_SPEC_IO_HPP
