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

#include "tkd/process.hpp"

#include <algorithm>

namespace tkd {

MultiTimeProcess::MultiTimeProcess(DensityOperator rho0,
                                   std::vector<QuantumChannel> channels, double tol)
    : rho0_(std::move(rho0)), channels_(std::move(channels)) {
  if (rho0_.dim() == 0) throw DimensionError("MultiTimeProcess: empty initial state");
  std::size_t d = rho0_.dim();
  for (std::size_t k = 0; k < channels_.size(); ++k) {
    if (channels_[k].d_in() != d) {
      throw DimensionError("MultiTimeProcess: channel " + std::to_string(k + 1) +
                           " expects input dim " +
                           std::to_string(channels_[k].d_in()) + ", chain has " +
                           std::to_string(d));
    }
    const auto r = validate_cptp(channels_[k], tol);
    if (!r.trace_preserving) {
      throw ValidationError("MultiTimeProcess: channel " + std::to_string(k + 1) +
                            " is not trace preserving (defect " +
                            std::to_string(r.defect) + ")");
    }
    d = channels_[k].d_out();
  }
}

std::size_t MultiTimeProcess::dim(std::size_t k) const {
  if (k == 0) return rho0_.dim();
  return channels_.at(k - 1).d_out();
}

std::vector<std::size_t> MultiTimeProcess::dims() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < times(); ++k) out.push_back(dim(k));
  return out;
}

bool MultiTimeProcess::square_chain() const {
  return std::all_of(channels_.begin(), channels_.end(),
                     [](const QuantumChannel& c) { return c.is_square(); });
}

bool MultiTimeProcess::all_unitary() const {
  return std::all_of(channels_.begin(), channels_.end(),
                     [](const QuantumChannel& c) {
                       return c.is_square() && c.kraus().size() == 1;
                     });
}

ComplexMatrix MultiTimeProcess::state_at(std::size_t k) const {
  if (k >= times()) throw DimensionError("state_at: time index out of range");
  ComplexMatrix x = rho0_.matrix();
  for (std::size_t j = 0; j < k; ++j) x = apply_channel(channels_[j], x);
  return x;
}

MultiTimeProcess MultiTimeProcess::sub_process(
    const std::vector<std::size_t>& times_kept) const {
  if (times_kept.empty()) throw DimensionError("sub_process: empty time list");
  for (std::size_t i = 0; i < times_kept.size(); ++i) {
    if (times_kept[i] >= times()) throw DimensionError("sub_process: index out of range");
    if (i && times_kept[i] <= times_kept[i - 1]) {
      throw DimensionError("sub_process: times must be strictly increasing");
    }
  }
  ComplexMatrix r = state_at(times_kept.front());
  r = 0.5 * (r + r.adjoint());
  std::vector<QuantumChannel> chain;
  for (std::size_t i = 1; i < times_kept.size(); ++i) {
    QuantumChannel c = channels_[times_kept[i - 1]];
    for (std::size_t k = times_kept[i - 1] + 1; k < times_kept[i]; ++k) {
      c = compose(channels_[k], c);
    }
    chain.push_back(std::move(c));
  }
  return MultiTimeProcess(DensityOperator(std::move(r)), std::move(chain));
}

MultiTimeProcess tensor_product(const MultiTimeProcess& a, const MultiTimeProcess& b) {
  if (a.steps() != b.steps()) {
    throw DimensionError("tensor_product: processes have different step counts");
  }
  std::vector<QuantumChannel> chain;
  for (std::size_t k = 0; k < a.steps(); ++k) {
    chain.push_back(tensor_channels(a.channels()[k], b.channels()[k]));
  }
  return MultiTimeProcess(DensityOperator(kron(a.rho0().matrix(), b.rho0().matrix())),
                          std::move(chain));
}

}  // namespace tkd
