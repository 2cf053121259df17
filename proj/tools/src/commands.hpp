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

#ifndef TKD_TOOLS_COMMANDS_HPP
#define TKD_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spec_io.hpp"

namespace tkd::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,       // unknown command or bad flags
  kParse = 3,       // malformed spec or result file
  kValidation = 4,  // numerical validation failure
};

// Recomputes a result document from its spec and request block. command is
// one of dist, nonclassicality, witness, state, charfn, circuit-sim, validate.
json compute(const ProcessSpec& spec, const std::string& command, const json& request);

// validate: per-component defects; "ok" is false if anything exceeds the
// tolerance.
json validation_report(const ProcessSpec& spec);

// Bundled worked examples: xy-qubit, replacement, measure-replace.
std::vector<std::string> demo_names();
std::string_view bundled_spec(const std::string& name);
json run_demo(const std::string& name);

struct VerifyOutcome {
  bool ok = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string reason;
};
// Recomputes doc from spec and compares every number within the tolerance
// recorded in the document; strings and shapes must match exactly.
VerifyOutcome verify_result(const json& doc, const ProcessSpec& spec);

// Flat delimited export of a dist document: one outcome tuple per row.
std::string distribution_csv(const json& doc);

// Full command line minus argv[0].
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tkd::cli

#endif  // TKD_TOOLS_COMMANDS_HPP
