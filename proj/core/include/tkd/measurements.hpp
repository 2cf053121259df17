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

#ifndef TKD_MEASUREMENTS_HPP
#define TKD_MEASUREMENTS_HPP

#include <vector>

#include "tkd/linops.hpp"

namespace tkd {

constexpr double kMeasurementTol = 1e-9;

struct Outcome {
  double value = 0.0;
  // Per-site tuple for product measurements; {value} otherwise.
  std::vector<double> label;
  ComplexMatrix projector;
};

// Complete set of orthogonal projectors with distinct labels.
class ProjectiveMeasurement {
 public:
  ProjectiveMeasurement() = default;
  explicit ProjectiveMeasurement(std::vector<Outcome> outcomes,
                                 double tol = kMeasurementTol);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return outcomes_.size(); }
  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
  const Outcome& operator[](std::size_t i) const { return outcomes_[i]; }
  std::vector<double> values() const;
  std::vector<ComplexMatrix> projectors() const;
  // sum_a value_a P_a
  ComplexMatrix observable() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Outcome> outcomes_;
};

// One measurement per time step t_0..t_n.
using MeasurementSchedule = std::vector<ProjectiveMeasurement>;

ProjectiveMeasurement spectral_measurement(const ComplexMatrix& observable,
                                           double tol = kDefaultEigTol);

// Builds a measurement from (value, projector) pairs.
ProjectiveMeasurement measurement_from_projectors(
    const std::vector<double>& values, const std::vector<ComplexMatrix>& projectors);

// Computational-basis measurement with outcome values 0..d-1.
ProjectiveMeasurement computational_measurement(std::size_t d);

// Site 0 is the slowest tensor factor.
ProjectiveMeasurement product_measurement(
    const std::vector<ProjectiveMeasurement>& locals);

// Orthogonal Hermitian operator basis with ops[0] = I and
// Tr(ops[mu] ops[nu]) = d delta_{mu nu}.
class HSBasis {
 public:
  HSBasis() = default;
  explicit HSBasis(std::vector<ComplexMatrix> ops, double tol = 1e-9);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  const ComplexMatrix& operator[](std::size_t mu) const { return ops_[mu]; }

 private:
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> ops_;
};

// Generalized Gell-Mann matrices scaled by sqrt(d/2): symmetric pairs (j<k),
// antisymmetric pairs (j<k), then the diagonal ladder. d = 2 gives I, X, Y, Z.
HSBasis hs_basis(std::size_t d);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
ComplexMatrix H();
}  // namespace pauli

}  // namespace tkd

#endif  // TKD_MEASUREMENTS_HPP
