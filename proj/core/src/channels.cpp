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

#include "tkd/channels.hpp"

#include <algorithm>
#include <cmath>

namespace tkd {

DensityOperator::DensityOperator(ComplexMatrix m, double tol) : m_(std::move(m)) {
  require_square(m_, "DensityOperator");
  if (m_.rows() == 0) throw DimensionError("DensityOperator: empty matrix");
  if (!is_hermitian(m_, tol)) {
    throw ValidationError("DensityOperator: not Hermitian");
  }
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw ValidationError("DensityOperator: trace " + std::to_string(tr.real()) +
                          " != 1");
  }
  const auto ev = eigenvalues_hermitian(m_);
  if (!ev.empty() && ev.front() < -tol) {
    throw ValidationError("DensityOperator: negative eigenvalue " +
                          std::to_string(ev.front()));
  }
}

DensityOperator DensityOperator::pure(const std::vector<cplx>& psi) {
  double n = 0.0;
  for (const auto& a : psi) n += std::norm(a);
  if (n == 0.0) throw ValidationError("DensityOperator::pure: zero vector");
  return DensityOperator((1.0 / n) * projector(psi));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t d) {
  return DensityOperator((1.0 / static_cast<double>(d)) *
                         ComplexMatrix::identity(d));
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("QuantumChannel: empty Kraus list");
  d_out_ = kraus_.front().rows();
  d_in_ = kraus_.front().cols();
  if (d_in_ == 0 || d_out_ == 0) {
    throw DimensionError("QuantumChannel: zero-sized Kraus operator");
  }
  for (const auto& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) {
      throw DimensionError("QuantumChannel: Kraus shape mismatch");
    }
  }
}

CptpReport validate_cptp(const QuantumChannel& c, double tol) {
  if (c.kraus().empty()) throw DimensionError("validate_cptp: empty Kraus list");
  ComplexMatrix s(c.d_in(), c.d_in());
  for (const auto& k : c.kraus()) s += k.adjoint() * k;
  CptpReport r;
  r.defect = max_abs_diff(s, ComplexMatrix::identity(c.d_in()));
  r.trace_preserving = r.defect <= tol;
  return r;
}

void require_cptp(const QuantumChannel& c, double tol) {
  const auto r = validate_cptp(c, tol);
  if (!r.trace_preserving) {
    throw ValidationError("channel is not trace preserving (defect " +
                          std::to_string(r.defect) + ")");
  }
}

ComplexMatrix apply_channel(const QuantumChannel& c, const ComplexMatrix& x) {
  if (x.rows() != c.d_in() || x.cols() != c.d_in()) {
    throw DimensionError("apply_channel: operand is not d_in x d_in");
  }
  ComplexMatrix out(c.d_out(), c.d_out());
  for (const auto& k : c.kraus()) out += k * x * k.adjoint();
  return out;
}

ComplexMatrix adjoint_apply(const QuantumChannel& c, const ComplexMatrix& x) {
  if (x.rows() != c.d_out() || x.cols() != c.d_out()) {
    throw DimensionError("adjoint_apply: operand is not d_out x d_out");
  }
  ComplexMatrix out(c.d_in(), c.d_in());
  for (const auto& k : c.kraus()) out += k.adjoint() * x * k;
  return out;
}

QuantumChannel compose(const QuantumChannel& later, const QuantumChannel& earlier) {
  if (earlier.d_out() != later.d_in()) {
    throw DimensionError("compose: earlier.d_out != later.d_in");
  }
  std::vector<ComplexMatrix> ks;
  ks.reserve(later.kraus().size() * earlier.kraus().size());
  for (const auto& l : later.kraus())
    for (const auto& e : earlier.kraus()) ks.push_back(l * e);
  return QuantumChannel(std::move(ks));
}

QuantumChannel mix_channels(double lambda, const QuantumChannel& a,
                            const QuantumChannel& b) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw ValidationError("mix_channels: lambda outside [0, 1]");
  }
  if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
    throw DimensionError("mix_channels: shape mismatch");
  }
  std::vector<ComplexMatrix> ks;
  if (lambda > 0.0)
    for (const auto& k : a.kraus()) ks.push_back(std::sqrt(lambda) * k);
  if (lambda < 1.0)
    for (const auto& k : b.kraus()) ks.push_back(std::sqrt(1.0 - lambda) * k);
  return QuantumChannel(std::move(ks));
}

QuantumChannel tensor_channels(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<ComplexMatrix> ks;
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) ks.push_back(kron(x, y));
  return QuantumChannel(std::move(ks));
}

ComplexMatrix jamiolkowski(const QuantumChannel& c) {
  const std::size_t di = c.d_in(), dout = c.d_out();
  ComplexMatrix j(dout * di, dout * di);
  for (std::size_t k = 0; k < di; ++k)
    for (std::size_t l = 0; l < di; ++l) {
      // c(|k><l|)[p][q] = sum_x K_x[p][k] conj(K_x[q][l])
      for (std::size_t p = 0; p < dout; ++p)
        for (std::size_t q = 0; q < dout; ++q) {
          cplx s = 0.0;
          for (const auto& kx : c.kraus()) s += kx(p, k) * std::conj(kx(q, l));
          j(p * di + l, q * di + k) = s;
        }
    }
  return j;
}

Dilation stinespring(const QuantumChannel& c) {
  if (!c.is_square()) {
    throw DimensionError("stinespring: channel must have d_in == d_out");
  }
  require_cptp(c);
  const std::size_t d = c.d_in();
  const std::size_t r = c.kraus().size();
  const std::size_t n = d * r;

  std::vector<std::vector<cplx>> cols(n);
  std::vector<bool> filled(n, false);
  std::vector<std::vector<cplx>> basis;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t x = 0; x < r; ++x) v[i * r + x] = c.kraus()[x](i, j);
    cols[j * r] = v;
    filled[j * r] = true;
    basis.push_back(std::move(v));
  }

  auto orthogonalize = [&](std::vector<cplx> v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        cplx ip = 0.0;
        for (std::size_t k = 0; k < n; ++k) ip += std::conj(b[k]) * v[k];
        for (std::size_t k = 0; k < n; ++k) v[k] -= ip * b[k];
      }
    }
    return v;
  };
  auto norm = [](const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
  };

  // Fill the free columns one by one with the canonical vector whose
  // residual is largest (first index wins ties).
  for (std::size_t col = 0; col < n; ++col) {
    if (filled[col]) continue;
    std::vector<cplx> best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<cplx> v(n);
      v[e] = 1.0;
      v = orthogonalize(std::move(v));
      const double nv = norm(v);
      if (nv > best_norm + 1e-12) {
        best_norm = nv;
        best = std::move(v);
      }
    }
    if (best_norm < 1e-8) throw ValidationError("stinespring: completion failed");
    for (auto& z : best) z /= best_norm;
    cols[col] = best;
    basis.push_back(std::move(best));
  }

  Dilation out;
  out.u = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row) out.u(row, col) = cols[col][row];
  out.env_dim = r;
  std::vector<cplx> e0(r);
  e0[0] = 1.0;
  out.env_state = DensityOperator::pure(e0);
  return out;
}

Instrument::Instrument(std::vector<InstrumentBranch> branches, double tol)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw DimensionError("Instrument: no branches");
  bool have_dim = false;
  for (const auto& b : branches_) {
    if (b.kraus.empty()) throw DimensionError("Instrument: empty branch");
    for (const auto& k : b.kraus) {
      if (!have_dim) {
        dim_ = k.cols();
        have_dim = true;
      }
      if (k.cols() != dim_) throw DimensionError("Instrument: input dim mismatch");
    }
  }
  ComplexMatrix s(dim_, dim_);
  for (const auto& b : branches_)
    for (const auto& k : b.kraus) s += k.adjoint() * k;
  const double defect = max_abs_diff(s, ComplexMatrix::identity(dim_));
  if (defect > tol) {
    throw ValidationError("Instrument: total map not trace preserving (defect " +
                          std::to_string(defect) + ")");
  }
}

Instrument Instrument::projective(const std::vector<ComplexMatrix>& projectors) {
  std::vector<InstrumentBranch> bs;
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    bs.push_back({std::to_string(k), {projectors[k]}});
  }
  return Instrument(std::move(bs));
}

ComplexMatrix Instrument::apply_branch(std::size_t k, const ComplexMatrix& x) const {
  const auto& b = branches_.at(k);
  const std::size_t dout = b.kraus.front().rows();
  ComplexMatrix out(dout, dout);
  for (const auto& e : b.kraus) out += e * x * e.adjoint();
  return out;
}

QuantumChannel identity_channel(std::size_t d) {
  return QuantumChannel({ComplexMatrix::identity(d)});
}

QuantumChannel unitary_channel(const ComplexMatrix& u) {
  require_square(u, "unitary_channel");
  const double defect =
      max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
  if (defect > kChannelTol) {
    throw ValidationError("unitary_channel: matrix is not unitary (defect " +
                          std::to_string(defect) + ")");
  }
  return QuantumChannel({u});
}

namespace {

// Kraus factors sqrt(lambda_i) |psi_i> of a density operator.
std::vector<std::pair<double, std::vector<cplx>>> spectral_factors(
    const DensityOperator& w) {
  std::vector<std::pair<double, std::vector<cplx>>> out;
  for (const auto& g : hermitian_eig(w.matrix(), 1e-12)) {
    if (g.value <= 1e-15) continue;
    for (const auto& v : g.vectors) out.emplace_back(g.value, v);
  }
  return out;
}

struct Builder {
  QuantumChannel operator()(const IdentityParams& p) const {
    if (p.dim == 0) throw ValidationError("identity channel: dim must be > 0");
    return identity_channel(p.dim);
  }
  QuantumChannel operator()(const UnitaryParams& p) const {
    return unitary_channel(p.u);
  }
  QuantumChannel operator()(const ReplacementParams& p) const {
    const std::size_t dout = p.omega.dim();
    if (dout == 0) throw ValidationError("replacement: omega not set");
    const std::size_t din = p.d_in == 0 ? dout : p.d_in;
    std::vector<ComplexMatrix> ks;
    for (const auto& [lam, psi] : spectral_factors(p.omega)) {
      for (std::size_t j = 0; j < din; ++j) {
        ComplexMatrix k(dout, din);
        for (std::size_t i = 0; i < dout; ++i) k(i, j) = std::sqrt(lam) * psi[i];
        ks.push_back(std::move(k));
      }
    }
    return QuantumChannel(std::move(ks));
  }
  QuantumChannel operator()(const MeasureReplaceParams& p) const {
    const auto& br = p.instrument.branches();
    if (br.empty()) throw ValidationError("measure_replace: empty instrument");
    if (p.outputs.size() != br.size()) {
      throw ValidationError("measure_replace: " + std::to_string(br.size()) +
                            " branches but " + std::to_string(p.outputs.size()) +
                            " output states");
    }
    const std::size_t din = p.instrument.dim();
    const std::size_t dout = p.outputs.front().dim();
    std::vector<ComplexMatrix> ks;
    for (std::size_t k = 0; k < br.size(); ++k) {
      if (p.outputs[k].dim() != dout) {
        throw DimensionError("measure_replace: output dims differ");
      }
      for (const auto& [lam, psi] : spectral_factors(p.outputs[k])) {
        for (const auto& e : br[k].kraus) {
          for (std::size_t m = 0; m < e.rows(); ++m) {
            // sqrt(lam) |psi><m| E
            ComplexMatrix kk(dout, din);
            for (std::size_t i = 0; i < dout; ++i)
              for (std::size_t j = 0; j < din; ++j)
                kk(i, j) = std::sqrt(lam) * psi[i] * e(m, j);
            ks.push_back(std::move(kk));
          }
        }
      }
    }
    return QuantumChannel(std::move(ks));
  }
  QuantumChannel operator()(const DepolarizingParams& p) const {
    if (!(p.p >= 0.0 && p.p <= 1.0)) {
      throw ValidationError("depolarizing: p must lie in [0, 1]");
    }
    if (p.dim == 0) throw ValidationError("depolarizing: dim must be > 0");
    const std::size_t d = p.dim;
    std::vector<ComplexMatrix> ks;
    if (p.p < 1.0) ks.push_back(std::sqrt(1.0 - p.p) * ComplexMatrix::identity(d));
    if (p.p > 0.0) {
      const double s = std::sqrt(p.p / static_cast<double>(d));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          ComplexMatrix k(d, d);
          k(i, j) = s;
          ks.push_back(std::move(k));
        }
    }
    return QuantumChannel(std::move(ks));
  }
};

}  // namespace

QuantumChannel build_channel(const ChannelParams& params) {
  QuantumChannel c = std::visit(Builder{}, params);
  require_cptp(c);
  return c;
}

}  // namespace tkd
