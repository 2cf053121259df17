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

#include "tkd/random.hpp"

#include <cmath>

namespace tkd::rnd {

namespace {

cplx gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  if (cols > rows) throw DimensionError("haar_isometry: cols > rows");
  // Gram-Schmidt on Ginibre columns gives Haar-distributed columns.
  std::vector<std::vector<cplx>> q;
  while (q.size() < cols) {
    std::vector<cplx> v(rows);
    for (auto& z : v) z = gaussian(rng);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : q) {
        cplx ip = 0.0;
        for (std::size_t i = 0; i < rows; ++i) ip += std::conj(b[i]) * v[i];
        for (std::size_t i = 0; i < rows; ++i) v[i] -= ip * b[i];
      }
    double nrm = 0.0;
    for (const auto& z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-10) continue;
    for (auto& z : v) z /= nrm;
    q.push_back(std::move(v));
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = q[j][i];
  return m;
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) { return haar_isometry(d, d, rng); }

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = gaussian(rng);
  return 0.5 * (g + g.adjoint());
}

DensityOperator random_density(std::size_t d, Rng& rng) {
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = gaussian(rng);
  ComplexMatrix r = g * g.adjoint();
  r = (1.0 / r.trace().real()) * r;
  return DensityOperator(0.5 * (r + r.adjoint()));
}

std::vector<cplx> random_state_vector(std::size_t d, Rng& rng) {
  std::vector<cplx> v(d);
  double n = 0.0;
  for (auto& z : v) {
    z = gaussian(rng);
    n += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(n);
  return v;
}

DensityOperator random_pure(std::size_t d, Rng& rng) {
  return DensityOperator::pure(random_state_vector(d, rng));
}

QuantumChannel random_channel(std::size_t d_in, std::size_t d_out, Rng& rng,
                              std::size_t env_dim) {
  const ComplexMatrix v = haar_isometry(d_out * env_dim, d_in, rng);
  std::vector<ComplexMatrix> ks(env_dim, ComplexMatrix(d_out, d_in));
  for (std::size_t x = 0; x < env_dim; ++x)
    for (std::size_t i = 0; i < d_out; ++i)
      for (std::size_t j = 0; j < d_in; ++j) ks[x](i, j) = v(i * env_dim + x, j);
  return QuantumChannel(std::move(ks));
}

ProjectiveMeasurement random_measurement(std::size_t d, Rng& rng) {
  return spectral_measurement(random_hermitian(d, rng));
}

MeasurementSchedule random_schedule(const std::vector<std::size_t>& dims, Rng& rng) {
  MeasurementSchedule s;
  for (std::size_t d : dims) s.push_back(random_measurement(d, rng));
  return s;
}

MultiTimeProcess random_process(const std::vector<std::size_t>& dims, Rng& rng,
                                ChannelFamily family) {
  if (dims.empty()) throw DimensionError("random_process: empty dimension list");
  DensityOperator rho = random_density(dims[0], rng);
  std::vector<QuantumChannel> chain;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 1; k < dims.size(); ++k) {
    bool unitary = family == ChannelFamily::unitary;
    if (family == ChannelFamily::mixed) unitary = coin(rng);
    if (unitary && dims[k] == dims[k - 1]) {
      chain.push_back(QuantumChannel({haar_unitary(dims[k], rng)}));
    } else {
      chain.push_back(random_channel(dims[k - 1], dims[k], rng));
    }
  }
  return MultiTimeProcess(std::move(rho), std::move(chain));
}

}  // namespace tkd::rnd
