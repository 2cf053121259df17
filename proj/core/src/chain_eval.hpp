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

#ifndef TKD_SRC_CHAIN_EVAL_HPP
#define TKD_SRC_CHAIN_EVAL_HPP

#include <functional>
#include <vector>

#include "tkd/process.hpp"

namespace tkd::detail {

using LevelOp = std::function<ComplexMatrix(const ComplexMatrix&)>;

// For every choice (c_0, ..., c_n) returns
//   Tr[op_n,c_n(E_n(... op_1,c_1(E_1(op_0,c_0(rho))) ...))]
// row-major with c_0 slowest. levels.size() must equal p.times().
std::vector<cplx> evaluate_chain(const MultiTimeProcess& p,
                                 const std::vector<std::vector<LevelOp>>& levels);

}  // namespace tkd::detail

#endif  // TKD_SRC_CHAIN_EVAL_HPP
