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

#ifndef TKD_TOMOGRAPHY_HPP
#define TKD_TOMOGRAPHY_HPP

#include <vector>

#include "tkd/quasiprob.hpp"

namespace tkd {

enum class CorrelatorKind { right, left, doubled, mh, mh_doubled, lvn };
enum class CorrelatorMethod { direct, via_distributions };

const char* to_string(CorrelatorKind k);
bool is_doubled(CorrelatorKind k);

// Temporal correlators T^{mu_0 ... mu_n}, row-major with mu_0 slowest.
// Doubled kinds: ket-side indices mu_0..mu_n, then bra-side nu_0..nu_n.
struct CorrelatorTensor {
  CorrelatorKind kind = CorrelatorKind::right;
  std::vector<std::size_t> dims;  // d_k per time step
  std::vector<cplx> values;

  std::size_t rank() const;
  std::vector<std::size_t> shape() const;
};

using BasisSchedule = std::vector<HSBasis>;

BasisSchedule default_bases(const MultiTimeProcess& p);

CorrelatorTensor correlators(const MultiTimeProcess& p, const BasisSchedule& bases,
                             CorrelatorKind kind,
                             CorrelatorMethod method = CorrelatorMethod::direct);

enum class StateKind { kd_right, kd_left, kd_doubled, mh, mh_doubled, pdo };

const char* to_string(StateKind k);
bool is_doubled(StateKind k);

struct StateFactor {
  std::size_t time = 0;
  Block block = Block::single;  // ket = L block, bra = R block
  std::size_t dim = 0;
};

// Operator on H_{t_n} (x) ... (x) H_{t_0} (latest time first). Doubled kinds
// carry the full L (ket) block followed by the R (bra) block.
struct TemporalStateOperator {
  StateKind kind = StateKind::kd_right;
  std::vector<StateFactor> factors;
  ComplexMatrix matrix;

  DimProfile profile() const;
};

TemporalStateOperator reconstruct_state(const CorrelatorTensor& t,
                                        const BasisSchedule& bases);

// Inverse of reconstruct_state: T = Tr[(sigma ... sigma) Y].
CorrelatorTensor state_correlators(const TemporalStateOperator& y,
                                   const BasisSchedule& bases);

// (n (x) I_A)(I_C (x) m) with n on H_C (x) H_B and m on H_B (x) H_A.
ComplexMatrix star(const ComplexMatrix& n, const ComplexMatrix& m,
                   std::size_t middle_dim);
// (I_C (x) m)(n (x) I_A): the state-in-front placement.
ComplexMatrix star_reversed(const ComplexMatrix& m, const ComplexMatrix& n,
                            std::size_t middle_dim);

// J[E_n] * ... * J[E_1] * rho_0; kind kd_left returns the adjoint.
TemporalStateOperator kd_state_recursive(const MultiTimeProcess& p,
                                         StateKind kind = StateKind::kd_right);
// Jordan recursion R_k = (J_k * R_{k-1} + R_{k-1} *' J_k) / 2.
TemporalStateOperator pdo(const MultiTimeProcess& p);
TemporalStateOperator mh_state(const TemporalStateOperator& y);

// Tr[(P_1 (x) ... ) Y] with one projector per factor, in factor order.
cplx born_eval(const TemporalStateOperator& y, const std::vector<ComplexMatrix>& projectors);
// Doubled kinds: ket and bra lists, each latest time first.
cplx born_eval(const TemporalStateOperator& y, const std::vector<ComplexMatrix>& ket,
               const std::vector<ComplexMatrix>& bra);

// Traces out every time not in keep_times; doubled kinds drop the L and R
// factors of a dropped time together.
TemporalStateOperator reduce_state(const TemporalStateOperator& y,
                                   const std::vector<std::size_t>& keep_times);

// Traces out one block of a doubled state. Tracing the ket (L) block leaves
// the right KD state, tracing the bra (R) block leaves the left one.
TemporalStateOperator trace_block(const TemporalStateOperator& y, Block block);

}  // namespace tkd

#endif  // TKD_TOMOGRAPHY_HPP
