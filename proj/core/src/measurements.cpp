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

#include "tkd/measurements.hpp"

#include <algorithm>
#include <cmath>

namespace tkd {

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Outcome> outcomes,
                                             double tol)
    : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw DimensionError("ProjectiveMeasurement: no outcomes");
  dim_ = outcomes_.front().projector.rows();
  ComplexMatrix total(dim_, dim_);
  for (auto& o : outcomes_) {
    if (o.label.empty()) o.label = {o.value};
    const auto& p = o.projector;
    if (p.rows() != dim_ || p.cols() != dim_) {
      throw DimensionError("ProjectiveMeasurement: projector shape mismatch");
    }
    if (!is_hermitian(p, tol)) {
      throw ValidationError("ProjectiveMeasurement: projector not Hermitian");
    }
    if (max_abs_diff(p * p, p) > tol) {
      throw ValidationError("ProjectiveMeasurement: projector not idempotent");
    }
    total += p;
  }
  if (max_abs_diff(total, ComplexMatrix::identity(dim_)) > tol) {
    throw ValidationError("ProjectiveMeasurement: projectors do not sum to I");
  }
  for (std::size_t a = 0; a < outcomes_.size(); ++a)
    for (std::size_t b = a + 1; b < outcomes_.size(); ++b) {
      if (outcomes_[a].label == outcomes_[b].label) {
        throw ValidationError("ProjectiveMeasurement: duplicate outcome label");
      }
      if (max_abs(outcomes_[a].projector * outcomes_[b].projector) > tol) {
        throw ValidationError("ProjectiveMeasurement: projectors not orthogonal");
      }
    }
}

std::vector<double> ProjectiveMeasurement::values() const {
  std::vector<double> v;
  for (const auto& o : outcomes_) v.push_back(o.value);
  return v;
}

std::vector<ComplexMatrix> ProjectiveMeasurement::projectors() const {
  std::vector<ComplexMatrix> v;
  for (const auto& o : outcomes_) v.push_back(o.projector);
  return v;
}

ComplexMatrix ProjectiveMeasurement::observable() const {
  ComplexMatrix a(dim_, dim_);
  for (const auto& o : outcomes_) a += o.value * o.projector;
  return a;
}

ProjectiveMeasurement spectral_measurement(const ComplexMatrix& observable,
                                           double tol) {
  std::vector<Outcome> outs;
  const std::size_t d = observable.rows();
  for (const auto& g : hermitian_eig(observable, tol)) {
    outs.push_back({g.value, {g.value}, g.projector(d)});
  }
  return ProjectiveMeasurement(std::move(outs));
}

ProjectiveMeasurement measurement_from_projectors(
    const std::vector<double>& values, const std::vector<ComplexMatrix>& projectors) {
  if (values.size() != projectors.size()) {
    throw DimensionError("measurement_from_projectors: size mismatch");
  }
  std::vector<Outcome> outs;
  for (std::size_t k = 0; k < values.size(); ++k) {
    outs.push_back({values[k], {values[k]}, projectors[k]});
  }
  return ProjectiveMeasurement(std::move(outs));
}

ProjectiveMeasurement computational_measurement(std::size_t d) {
  std::vector<Outcome> outs;
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMatrix p(d, d);
    p(k, k) = 1.0;
    const double v = static_cast<double>(k);
    outs.push_back({v, {v}, std::move(p)});
  }
  return ProjectiveMeasurement(std::move(outs));
}

ProjectiveMeasurement product_measurement(
    const std::vector<ProjectiveMeasurement>& locals) {
  if (locals.empty()) throw DimensionError("product_measurement: empty list");
  std::vector<Outcome> acc = locals.front().outcomes();
  for (std::size_t s = 1; s < locals.size(); ++s) {
    std::vector<Outcome> next;
    for (const auto& a : acc)
      for (const auto& b : locals[s].outcomes()) {
        Outcome o;
        o.value = a.value * b.value;
        o.label = a.label;
        o.label.insert(o.label.end(), b.label.begin(), b.label.end());
        o.projector = kron(a.projector, b.projector);
        next.push_back(std::move(o));
      }
    acc = std::move(next);
  }
  return ProjectiveMeasurement(std::move(acc));
}

HSBasis::HSBasis(std::vector<ComplexMatrix> ops, double tol) : ops_(std::move(ops)) {
  if (ops_.empty()) throw DimensionError("HSBasis: empty");
  dim_ = ops_.front().rows();
  if (ops_.size() != dim_ * dim_) {
    throw DimensionError("HSBasis: expected d^2 operators");
  }
  if (max_abs_diff(ops_.front(), ComplexMatrix::identity(dim_)) > tol) {
    throw ValidationError("HSBasis: ops[0] must be the identity");
  }
  const double d = static_cast<double>(dim_);
  for (std::size_t mu = 0; mu < ops_.size(); ++mu) {
    if (ops_[mu].rows() != dim_ || !ops_[mu].is_square()) {
      throw DimensionError("HSBasis: operator shape mismatch");
    }
    if (!is_hermitian(ops_[mu], tol)) throw ValidationError("HSBasis: non-Hermitian");
    for (std::size_t nu = mu; nu < ops_.size(); ++nu) {
      const cplx g = trace_product(ops_[mu], ops_[nu]);
      const double want = mu == nu ? d : 0.0;
      if (std::abs(g - want) > tol) {
        throw ValidationError("HSBasis: Gram matrix is not d * I");
      }
    }
  }
}

HSBasis hs_basis(std::size_t d) {
  if (d < 2) throw DimensionError("hs_basis: d must be >= 2");
  const double scale = std::sqrt(static_cast<double>(d) / 2.0);
  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix::identity(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = scale;
      m(k, j) = scale;
      ops.push_back(std::move(m));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = cplx(0.0, -scale);
      m(k, j) = cplx(0.0, scale);
      ops.push_back(std::move(m));
    }
  for (std::size_t l = 1; l < d; ++l) {
    const double c =
        scale * std::sqrt(2.0 / (static_cast<double>(l) * static_cast<double>(l + 1)));
    ComplexMatrix m(d, d);
    for (std::size_t j = 0; j < l; ++j) m(j, j) = c;
    m(l, l) = -c * static_cast<double>(l);
    ops.push_back(std::move(m));
  }
  return HSBasis(std::move(ops));
}

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::identity(2); }
ComplexMatrix X() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix Y() {
  return ComplexMatrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
}
ComplexMatrix Z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
ComplexMatrix H() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix::from_rows({{s, s}, {s, -s}});
}
}  // namespace pauli

}  // namespace tkd
