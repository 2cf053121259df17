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

#ifndef TKD_QUASIPROB_HPP
#define TKD_QUASIPROB_HPP

#include <span>
#include <string>
#include <vector>

#include "tkd/measurements.hpp"
#include "tkd/process.hpp"

namespace tkd {

enum class DistKind { kd_right, kd_left, kd_doubled, mh, mh_doubled, lvn };

const char* to_string(DistKind k);
bool is_doubled(DistKind k);

// Which side of the doubled layout an axis belongs to.
enum class Block { single, ket, bra };

struct OutcomeAxis {
  std::size_t time = 0;
  Block block = Block::single;
  std::vector<double> values;
  std::vector<std::vector<double>> labels;
};

// Complex tensor over outcome tuples, row-major over `axes` (axis 0 slowest).
// Axes are in ascending time order; doubled kinds hold the ket block
// t_0..t_n followed by the bra block t_0..t_n.
class QuasiDistribution {
 public:
  QuasiDistribution() = default;
  QuasiDistribution(DistKind kind, std::vector<OutcomeAxis> axes,
                    std::vector<cplx> values);

  DistKind kind() const noexcept { return kind_; }
  const std::vector<OutcomeAxis>& axes() const noexcept { return axes_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  std::vector<std::size_t> shape() const;
  std::size_t size() const noexcept { return values_.size(); }

  std::size_t flat_index(const std::vector<std::size_t>& idx) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;
  const cplx& at(const std::vector<std::size_t>& idx) const;
  cplx total() const;

 private:
  DistKind kind_ = DistKind::kd_right;
  std::vector<OutcomeAxis> axes_;
  std::vector<cplx> values_;
};

// Tr[E_n(...E_1(rho P_{b0}) P_{b1} ...) P_{bn}]
QuasiDistribution kd_right(const MultiTimeProcess& p, const MeasurementSchedule& s);
// Tr[P_{an} E_n(... P_{a1} E_1(P_{a0} rho))]
QuasiDistribution kd_left(const MultiTimeProcess& p, const MeasurementSchedule& s);
// Tr[P_{an} E_n(... E_1(P_{a0} rho P_{b0}) ...) P_{bn}]
QuasiDistribution kd_doubled(const MultiTimeProcess& p, const MeasurementSchedule& ket,
                             const MeasurementSchedule& bra);
// Sequential projective (collapse) statistics.
QuasiDistribution lvn(const MultiTimeProcess& p, const MeasurementSchedule& s);

// Real part; kd_right/kd_left -> mh, kd_doubled -> mh_doubled.
QuasiDistribution mh_from_kd(const QuasiDistribution& q);
QuasiDistribution mh(const MultiTimeProcess& p, const MeasurementSchedule& s);

// Sums over every axis not listed in `keep`; kept axes stay in their order.
QuasiDistribution marginalize(const QuasiDistribution& q,
                              const std::vector<std::size_t>& keep);

// Sums entries over blocks of a partition of flat tuple indices.
std::vector<cplx> coarse_grain(const QuasiDistribution& q,
                               const std::vector<std::vector<std::size_t>>& partition);

enum class NcVariant { linear, log };

double nonclassicality(std::span<const cplx> values, NcVariant v = NcVariant::linear);
double nonclassicality(const QuasiDistribution& q, NcVariant v = NcVariant::linear);

// All entries real and >= -tol.
bool is_classical(const QuasiDistribution& q, double tol = 1e-10);

struct JointMeasurementOperators {
  DistKind kind = DistKind::kd_right;
  std::vector<OutcomeAxis> axes;  // same layout as the matching distribution
  std::vector<ComplexMatrix> ops;
};

// Heisenberg-picture operators on H_{t0}; right/left kinds only.
JointMeasurementOperators joint_ops(const MultiTimeProcess& p,
                                    const MeasurementSchedule& s, DistKind kind);
JointMeasurementOperators joint_ops_doubled(const MultiTimeProcess& p,
                                            const MeasurementSchedule& ket,
                                            const MeasurementSchedule& bra);

struct WitnessPair {
  std::string family;  // "tail-vs-first", "nested", "unitary-pairwise"
  std::size_t level = 0;
  std::vector<std::size_t> tuple;  // outcome indices, ascending time
};

struct WitnessReport {
  double nonclassicality = 0.0;
  double max_commutator_norm = 0.0;
  WitnessPair worst_pair;
};

WitnessReport classicality_witness(const MultiTimeProcess& p,
                                   const MeasurementSchedule& s);

// <post|A|pre> / <post|pre>
cplx weak_value(const ComplexMatrix& a, const std::vector<cplx>& pre_state,
                const std::vector<cplx>& post_state);

}  // namespace tkd

#endif  // TKD_QUASIPROB_HPP
