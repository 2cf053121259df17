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

#ifndef TKD_CHARFUNC_HPP
#define TKD_CHARFUNC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tkd/quasiprob.hpp"

namespace tkd {

enum class CharKind { right, left, doubled };

const char* to_string(CharKind k);

// Per-step observables: `bra` (B_k) drives the right function, `ket` (A_k)
// the left one, and the doubled function uses both.
struct ObservableSchedule {
  std::vector<ComplexMatrix> ket;
  std::vector<ComplexMatrix> bra;
};

// One phase per axis; doubled points list v_0..v_n (ket) then u_0..u_n (bra).
using CharPoint = std::vector<double>;

struct CharSamples {
  CharKind kind = CharKind::right;
  std::vector<CharPoint> grid;
  std::vector<cplx> values;
};

cplx char_value(const MultiTimeProcess& p, const ObservableSchedule& obs,
                const CharPoint& point, CharKind kind);
CharSamples char_fn(const MultiTimeProcess& p, const ObservableSchedule& obs,
                    const std::vector<CharPoint>& grid, CharKind kind);

// Measurement schedule(s) built from the spectral decomposition of obs.
MeasurementSchedule observable_schedule(const std::vector<ComplexMatrix>& observables);

// The distribution whose Fourier transform char_fn computes.
QuasiDistribution char_distribution(const MultiTimeProcess& p,
                                    const ObservableSchedule& obs, CharKind kind);

// sum_x Q(x) exp(i <s, x * point>) with s = -1 on single/bra axes of a right
// distribution and on bra axes of a doubled one, +1 on left/ket axes.
cplx char_from_distribution(const QuasiDistribution& q, const CharPoint& point);

// Per axis: nodes u_j = j * pi / (1 + max|b - b'|), j = 0..m-1.
std::vector<std::vector<double>> default_nodes(
    const std::vector<std::vector<double>>& spectra);
// Full tensor grid over per-axis nodes, row-major with axis 0 slowest.
std::vector<CharPoint> tensor_grid(const std::vector<std::vector<double>>& nodes);

constexpr double kMaxInversionCondition = 1e6;

struct InversionResult {
  QuasiDistribution distribution;
  std::vector<double> condition_numbers;  // per axis
};

// spectra: outcome values per axis in the same axis order as the grid.
InversionResult invert_char(const CharSamples& samples,
                            const std::vector<std::vector<double>>& spectra);

struct CircuitOptions {
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
};

struct CircuitResult {
  cplx exact;                    // <X> + i s <Y>
  std::optional<cplx> estimate;  // shot estimate, when shots were requested
  double se_re = 0.0;            // analytic standard errors of the estimate
  double se_im = 0.0;
  std::uint64_t shots_x = 0;
  std::uint64_t shots_y = 0;
  int readout_sign = 0;
  int gate_phase_sign = 0;
  std::size_t register_dim = 0;
};

// Sign conventions of the interferometer, fixed once against char_value on a
// reference qubit process.
struct CircuitConvention {
  int readout_sign;
  int gate_phase_sign;
};
const CircuitConvention& circuit_convention();

CircuitResult circuit_sim(const MultiTimeProcess& p, const ObservableSchedule& obs,
                          const CharPoint& point, CharKind kind,
                          const CircuitOptions& opts = {});

}  // namespace tkd

#endif  // TKD_CHARFUNC_HPP
