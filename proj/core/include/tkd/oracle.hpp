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

#ifndef TKD_ORACLE_HPP
#define TKD_ORACLE_HPP

#include "tkd/tomography.hpp"

// Brute-force reference implementations. Every entry is computed from scratch
// in the Heisenberg picture; nothing here calls into the quasiprob or
// tomography evaluation paths.

namespace tkd::oracle {

// kind: kd_right, kd_left, mh or lvn.
QuasiDistribution oracle_kd(const MultiTimeProcess& p, const MeasurementSchedule& s,
                            DistKind kind);
QuasiDistribution oracle_kd_doubled(const MultiTimeProcess& p,
                                    const MeasurementSchedule& ket,
                                    const MeasurementSchedule& bra);

// Exhaustive Bloch sum over the canonical HS bases.
TemporalStateOperator oracle_state(const MultiTimeProcess& p, StateKind kind);

}  // namespace tkd::oracle

#endif  // TKD_ORACLE_HPP
