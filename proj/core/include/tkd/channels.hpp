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

#ifndef TKD_CHANNELS_HPP
#define TKD_CHANNELS_HPP

#include <string>
#include <variant>
#include <vector>

#include "tkd/linops.hpp"

namespace tkd {

constexpr double kStateTol = 1e-9;
constexpr double kChannelTol = 1e-9;

// Unit-trace positive semidefinite Hermitian operator. The constructor
// enforces all three properties within `tol`.
class DensityOperator {
 public:
  DensityOperator() = default;
  explicit DensityOperator(ComplexMatrix m, double tol = kStateTol);

  static DensityOperator pure(const std::vector<cplx>& psi);
  static DensityOperator maximally_mixed(std::size_t d);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

struct CptpReport {
  bool trace_preserving = false;
  double defect = 0.0;
};

// Kraus representation of a CP map. Construction checks shapes only; use
// validate_cptp (or the factory functions) for trace preservation.
class QuantumChannel {
 public:
  QuantumChannel() = default;
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  bool is_square() const noexcept { return d_in_ == d_out_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

 private:
  std::size_t d_in_ = 0;
  std::size_t d_out_ = 0;
  std::vector<ComplexMatrix> kraus_;
};

CptpReport validate_cptp(const QuantumChannel& c, double tol = kChannelTol);
// Throws ValidationError when the channel is not trace preserving.
void require_cptp(const QuantumChannel& c, double tol = kChannelTol);

ComplexMatrix apply_channel(const QuantumChannel& c, const ComplexMatrix& x);
ComplexMatrix adjoint_apply(const QuantumChannel& c, const ComplexMatrix& x);

// Action equals later(earlier(.)).
QuantumChannel compose(const QuantumChannel& later, const QuantumChannel& earlier);

// lambda * a + (1 - lambda) * b at the level of actions.
QuantumChannel mix_channels(double lambda, const QuantumChannel& a,
                            const QuantumChannel& b);
QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b);

// J = sum_{k,l} c(|k><l|) (x) |l><k|, on H_out (x) H_in.
ComplexMatrix jamiolkowski(const QuantumChannel& c);

struct Dilation {
  ComplexMatrix u;  // on H_sys (x) H_env, system index slowest
  std::size_t env_dim = 1;
  DensityOperator env_state;
};

Dilation stinespring(const QuantumChannel& c);

struct InstrumentBranch {
  std::string label;
  std::vector<ComplexMatrix> kraus;
};

class Instrument {
 public:
  Instrument() = default;
  explicit Instrument(std::vector<InstrumentBranch> branches,
                      double tol = kChannelTol);

  // Each projector of a complete projective family becomes one branch.
  static Instrument projective(const std::vector<ComplexMatrix>& projectors);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<InstrumentBranch>& branches() const noexcept {
    return branches_;
  }
  // M_k(x)
  ComplexMatrix apply_branch(std::size_t k, const ComplexMatrix& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<InstrumentBranch> branches_;
};

struct IdentityParams {
  std::size_t dim = 2;
};
struct UnitaryParams {
  ComplexMatrix u;
};
struct ReplacementParams {
  DensityOperator omega;
  std::size_t d_in = 0;  // 0 means omega.dim()
};
struct MeasureReplaceParams {
  Instrument instrument;
  std::vector<DensityOperator> outputs;
};
struct DepolarizingParams {
  std::size_t dim = 2;
  double p = 0.0;
};

using ChannelParams = std::variant<IdentityParams, UnitaryParams,
                                   ReplacementParams, MeasureReplaceParams,
                                   DepolarizingParams>;

QuantumChannel build_channel(const ChannelParams& params);

QuantumChannel identity_channel(std::size_t d);
QuantumChannel unitary_channel(const ComplexMatrix& u);

}  // namespace tkd

#endif  // TKD_CHANNELS_HPP
