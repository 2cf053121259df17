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

#ifndef TKD_PROCESS_HPP
#define TKD_PROCESS_HPP

#include <vector>

#include "tkd/channels.hpp"

namespace tkd {

// Initial state at t_0 plus the channel chain E_{t_k <- t_{k-1}}, k = 1..n.
class MultiTimeProcess {
 public:
  MultiTimeProcess() = default;
  MultiTimeProcess(DensityOperator rho0, std::vector<QuantumChannel> channels,
                   double tol = kChannelTol);

  const DensityOperator& rho0() const noexcept { return rho0_; }
  const std::vector<QuantumChannel>& channels() const noexcept { return channels_; }
  const QuantumChannel& channel(std::size_t k) const { return channels_.at(k - 1); }

  // n; the process has n + 1 time points.
  std::size_t steps() const noexcept { return channels_.size(); }
  std::size_t times() const noexcept { return channels_.size() + 1; }
  std::size_t dim(std::size_t k) const;
  std::vector<std::size_t> dims() const;
  bool square_chain() const;
  bool all_unitary() const;

  // rho_{t_k}
  ComplexMatrix state_at(std::size_t k) const;

  // Process restricted to an increasing list of time indices: its initial
  // state is rho at the first listed time, and consecutive kept times are
  // linked by composed channels.
  MultiTimeProcess sub_process(const std::vector<std::size_t>& times) const;

 private:
  DensityOperator rho0_;
  std::vector<QuantumChannel> channels_;
};

// P1 (x) P2 with matching step counts.
MultiTimeProcess tensor_product(const MultiTimeProcess& a, const MultiTimeProcess& b);

}  // namespace tkd

#endif  // TKD_PROCESS_HPP
