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

#ifndef TKD_TESTS_FIXTURES_HPP
#define TKD_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "tkd/tkd.hpp"

namespace tkd::testing {

inline const cplx kI{0.0, 1.0};

inline ProjectiveMeasurement meas(const ComplexMatrix& obs) {
  return spectral_measurement(obs);
}

inline DensityOperator ket0() { return DensityOperator::pure({1.0, 0.0}); }
inline DensityOperator ket1() { return DensityOperator::pure({0.0, 1.0}); }
inline DensityOperator plus_state() { return DensityOperator::pure({1.0, 1.0}); }
inline DensityOperator minus_state() { return DensityOperator::pure({1.0, -1.0}); }

// |0><0|, identity step, X at t0, Y at t1.
inline MultiTimeProcess xy_process() { return MultiTimeProcess(ket0(), {identity_channel(2)}); }
inline MeasurementSchedule xy_schedule() { return {meas(pauli::X()), meas(pauli::Y())}; }

inline double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::vector<cplx> conj_all(std::vector<cplx> v) {
  for (auto& z : v) z = std::conj(z);
  return v;
}

// Index of the outcome with the given value in a measurement.
inline std::size_t outcome_index(const ProjectiveMeasurement& m, double value) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (std::abs(m[i].value - value) < 1e-9) return i;
  return m.size();
}

}  // namespace tkd::testing

#endif  // TKD_TESTS_FIXTURES_HPP
