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

#include "tkd/oracle.hpp"

namespace tkd::oracle {

namespace {

// sum_x K_x^dag y K_x, written out index by index.
ComplexMatrix heisenberg(const QuantumChannel& c, const ComplexMatrix& y) {
  const std::size_t di = c.d_in(), dout = c.d_out();
  ComplexMatrix out(di, di);
  for (const auto& k : c.kraus())
    for (std::size_t i = 0; i < di; ++i)
      for (std::size_t j = 0; j < di; ++j) {
        cplx s = 0.0;
        for (std::size_t a = 0; a < dout; ++a)
          for (std::size_t b = 0; b < dout; ++b)
            s += std::conj(k(a, i)) * y(a, b) * k(b, j);
        out(i, j) += s;
      }
  return out;
}

cplx trace_against(const ComplexMatrix& y, const ComplexMatrix& rho) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) s += y(i, j) * rho(j, i);
  return s;
}

std::vector<std::size_t> decode(std::size_t f, const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> idx(shape.size());
  for (std::size_t a = shape.size(); a-- > 0;) {
    idx[a] = f % shape[a];
    f /= shape[a];
  }
  return idx;
}

std::vector<OutcomeAxis> make_axes(const MeasurementSchedule& s, Block b) {
  std::vector<OutcomeAxis> axes;
  for (std::size_t k = 0; k < s.size(); ++k) {
    OutcomeAxis a;
    a.time = k;
    a.block = b;
    for (const auto& o : s[k].outcomes()) {
      a.values.push_back(o.value);
      a.labels.push_back(o.label);
    }
    axes.push_back(std::move(a));
  }
  return axes;
}

void check(const MultiTimeProcess& p, const MeasurementSchedule& s) {
  if (s.size() != p.times()) throw DimensionError("oracle: schedule length mismatch");
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k].dim() != p.dim(k)) throw DimensionError("oracle: measurement dim mismatch");
  if (!p.square_chain()) throw DimensionError("oracle: requires a square channel chain");
}

// Heisenberg nest for a single tuple of per-time operator pairs (l_k, r_k):
//   Y_n = r_n l_n,  Y_{k-1} = r_{k-1} E_k^dag(Y_k) l_{k-1}
// with the trace Tr[Y_0 rho]. `jordan` replaces the sandwich by the
// symmetrized product (l X + X l)/2 (with r unused).
cplx nest(const MultiTimeProcess& p, const std::vector<const ComplexMatrix*>& l,
          const std::vector<const ComplexMatrix*>& r, bool jordan) {
  const std::size_t n = p.steps();
  auto level = [&](std::size_t k, const ComplexMatrix& x) {
    if (jordan) return 0.5 * (*l[k] * x + x * *l[k]);
    ComplexMatrix out = x;
    if (r[k]) out = *r[k] * out;
    if (l[k]) out = out * *l[k];
    return out;
  };
  ComplexMatrix y = level(n, ComplexMatrix::identity(p.dim(n)));
  for (std::size_t k = n; k > 0; --k) y = level(k - 1, heisenberg(p.channels()[k - 1], y));
  return trace_against(y, p.rho0().matrix());
}

}  // namespace

QuasiDistribution oracle_kd(const MultiTimeProcess& p, const MeasurementSchedule& s,
                            DistKind kind) {
  check(p, s);
  const std::size_t T = p.times();
  std::vector<std::size_t> shape;
  for (const auto& m : s) shape.push_back(m.size());
  std::size_t total = 1;
  for (auto x : shape) total *= x;
  std::vector<cplx> v(total);
  for (std::size_t f = 0; f < total; ++f) {
    const auto idx = decode(f, shape);
    std::vector<const ComplexMatrix*> l(T, nullptr), r(T, nullptr);
    for (std::size_t k = 0; k < T; ++k) {
      const ComplexMatrix* pr = &s[k][idx[k]].projector;
      switch (kind) {
        case DistKind::kd_right:
        case DistKind::mh: r[k] = pr; break;
        case DistKind::kd_left: l[k] = pr; break;
        case DistKind::lvn: l[k] = r[k] = pr; break;
        default: throw ValidationError("oracle_kd: unsupported kind");
      }
    }
    cplx z = nest(p, l, r, false);
    if (kind == DistKind::mh || kind == DistKind::lvn) z = cplx(z.real(), 0.0);
    v[f] = z;
  }
  return QuasiDistribution(kind, make_axes(s, Block::single), std::move(v));
}

QuasiDistribution oracle_kd_doubled(const MultiTimeProcess& p,
                                    const MeasurementSchedule& ket,
                                    const MeasurementSchedule& bra) {
  check(p, ket);
  check(p, bra);
  const std::size_t T = p.times();
  std::vector<std::size_t> shape;
  for (const auto& m : ket) shape.push_back(m.size());
  for (const auto& m : bra) shape.push_back(m.size());
  std::size_t total = 1;
  for (auto x : shape) total *= x;
  std::vector<cplx> v(total);
  for (std::size_t f = 0; f < total; ++f) {
    const auto idx = decode(f, shape);
    std::vector<const ComplexMatrix*> l(T), r(T);
    for (std::size_t k = 0; k < T; ++k) {
      l[k] = &ket[k][idx[k]].projector;
      r[k] = &bra[k][idx[T + k]].projector;
    }
    v[f] = nest(p, l, r, false);
  }
  auto axes = make_axes(ket, Block::ket);
  auto b = make_axes(bra, Block::bra);
  axes.insert(axes.end(), b.begin(), b.end());
  return QuasiDistribution(DistKind::kd_doubled, std::move(axes), std::move(v));
}

TemporalStateOperator oracle_state(const MultiTimeProcess& p, StateKind kind) {
  const std::size_t T = p.times();
  const bool dbl = kind == StateKind::kd_doubled || kind == StateKind::mh_doubled;
  std::vector<HSBasis> bases;
  for (std::size_t k = 0; k < T; ++k) bases.push_back(hs_basis(p.dim(k)));

  std::vector<std::size_t> shape;
  for (std::size_t k = 0; k < T; ++k) shape.push_back(bases[k].size());
  if (dbl)
    for (std::size_t k = 0; k < T; ++k) shape.push_back(bases[k].size());
  std::size_t total = 1;
  double pref = 1.0;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    total *= shape[a];
    pref /= static_cast<double>(bases[a % T].dim());
  }

  TemporalStateOperator y;
  y.kind = kind;
  for (int block = 0; block < (dbl ? 2 : 1); ++block)
    for (std::size_t q = 0; q < T; ++q) {
      const std::size_t t = T - 1 - q;
      y.factors.push_back({t, dbl ? (block == 0 ? Block::ket : Block::bra) : Block::single,
                           p.dim(t)});
    }
  std::size_t side = 1;
  for (const auto& f : y.factors) side *= f.dim;
  y.matrix = ComplexMatrix(side, side);

  for (std::size_t f = 0; f < total; ++f) {
    const auto idx = decode(f, shape);
    std::vector<const ComplexMatrix*> l(T, nullptr), r(T, nullptr);
    bool jordan = false;
    for (std::size_t k = 0; k < T; ++k) {
      const ComplexMatrix* sg = &bases[k][idx[k]];
      switch (kind) {
        case StateKind::kd_right:
        case StateKind::mh: r[k] = sg; break;
        case StateKind::kd_left: l[k] = sg; break;
        case StateKind::kd_doubled:
        case StateKind::mh_doubled:
          l[k] = sg;
          r[k] = &bases[k][idx[T + k]];
          break;
        case StateKind::pdo:
          l[k] = sg;
          jordan = true;
          break;
      }
    }
    cplx t = nest(p, l, r, jordan);
    if (kind == StateKind::mh || kind == StateKind::mh_doubled || kind == StateKind::pdo) {
      t = cplx(t.real(), 0.0);
    }
    if (t == cplx(0.0, 0.0)) continue;
    std::vector<ComplexMatrix> fs;
    for (std::size_t q = 0; q < T; ++q) fs.push_back(bases[T - 1 - q][idx[T - 1 - q]]);
    if (dbl)
      for (std::size_t q = 0; q < T; ++q)
        fs.push_back(bases[T - 1 - q][idx[T + T - 1 - q]]);
    y.matrix += (pref * t) * kron_all(fs);
  }
  return y;
}

}  // namespace tkd::oracle
