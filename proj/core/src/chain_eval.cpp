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

#include "chain_eval.hpp"

namespace tkd::detail {

namespace {

struct Walker {
  const MultiTimeProcess& p;
  const std::vector<std::vector<LevelOp>>& levels;
  std::vector<cplx>& out;

  void run(std::size_t k, const ComplexMatrix& x, std::size_t base) {
    const auto& ops = levels[k];
    const bool last = k + 1 == levels.size();
    for (std::size_t c = 0; c < ops.size(); ++c) {
      const std::size_t idx = base * ops.size() + c;
      ComplexMatrix y = ops[c](x);
      if (last) {
        out[idx] = y.trace();
      } else {
        run(k + 1, apply_channel(p.channels()[k], y), idx);
      }
    }
  }
};

}  // namespace

std::vector<cplx> evaluate_chain(const MultiTimeProcess& p,
                                 const std::vector<std::vector<LevelOp>>& levels) {
  if (levels.size() != p.times()) {
    throw DimensionError("evaluate_chain: expected one level per time step");
  }
  std::size_t total = 1;
  for (const auto& l : levels) {
    if (l.empty()) throw DimensionError("evaluate_chain: empty level");
    total *= l.size();
  }
  std::vector<cplx> out(total);
  Walker w{p, levels, out};
  w.run(0, p.rho0().matrix(), 0);
  return out;
}

}  // namespace tkd::detail
