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

#ifndef TKD_RANDOM_HPP
#define TKD_RANDOM_HPP

#include <random>

#include "tkd/process.hpp"
#include "tkd/measurements.hpp"

namespace tkd::rnd {

using Rng = std::mt19937_64;

// Haar-distributed unitary (QR of a complex Ginibre matrix, phase-fixed).
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);
// First `cols` columns of a Haar unitary on `rows` dims.
ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);

ComplexMatrix random_hermitian(std::size_t d, Rng& rng);
// Full-rank density operator (Ginibre construction).
DensityOperator random_density(std::size_t d, Rng& rng);
DensityOperator random_pure(std::size_t d, Rng& rng);
std::vector<cplx> random_state_vector(std::size_t d, Rng& rng);

// Stinespring channel from a Haar isometry with environment of size env_dim.
QuantumChannel random_channel(std::size_t d_in, std::size_t d_out, Rng& rng,
                              std::size_t env_dim = 2);

// Spectral measurement of a random Hermitian observable: d outcomes.
ProjectiveMeasurement random_measurement(std::size_t d, Rng& rng);
MeasurementSchedule random_schedule(const std::vector<std::size_t>& dims, Rng& rng);

enum class ChannelFamily { unitary, kraus, mixed };

// dims[k] is the dimension at t_k. `mixed` draws each step's family at random.
MultiTimeProcess random_process(const std::vector<std::size_t>& dims, Rng& rng,
                                ChannelFamily family = ChannelFamily::kraus);

}  // namespace tkd::rnd

#endif  // TKD_RANDOM_HPP
