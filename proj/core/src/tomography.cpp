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

#include "tkd/tomography.hpp"


#include "chain_eval.hpp"

namespace tkd {

using detail::evaluate_chain;
using detail::LevelOp;

const char* to_string(CorrelatorKind k) {
  switch (k) {
    case CorrelatorKind::right: return "right";
    case CorrelatorKind::left: return "left";
    case CorrelatorKind::doubled: return "doubled";
    case CorrelatorKind::mh: return "mh";
    case CorrelatorKind::mh_doubled: return "mh_doubled";
    case CorrelatorKind::lvn: return "lvn";
  }
  return "?";
}

bool is_doubled(CorrelatorKind k) {
  return k == CorrelatorKind::doubled || k == CorrelatorKind::mh_doubled;
}

const char* to_string(StateKind k) {
  switch (k) {
    case StateKind::kd_right: return "kd_right";
    case StateKind::kd_left: return "kd_left";
    case StateKind::kd_doubled: return "kd_doubled";
    case StateKind::mh: return "mh";
    case StateKind::mh_doubled: return "mh_doubled";
    case StateKind::pdo: return "pdo";
  }
  return "?";
}

bool is_doubled(StateKind k) {
  return k == StateKind::kd_doubled || k == StateKind::mh_doubled;
}

std::size_t CorrelatorTensor::rank() const {
  return is_doubled(kind) ? 2 * dims.size() : dims.size();
}

std::vector<std::size_t> CorrelatorTensor::shape() const {
  std::vector<std::size_t> s;
  for (std::size_t d : dims) s.push_back(d * d);
  if (is_doubled(kind))
    for (std::size_t d : dims) s.push_back(d * d);
  return s;
}

DimProfile TemporalStateOperator::profile() const {
  DimProfile p;
  for (const auto& f : factors) p.dims.push_back(f.dim);
  return p;
}

BasisSchedule default_bases(const MultiTimeProcess& p) {
  BasisSchedule b;
  for (std::size_t d : p.dims()) b.push_back(hs_basis(d));
  return b;
}

namespace {

void check_bases(const MultiTimeProcess& p, const BasisSchedule& bases) {
  if (bases.size() != p.times()) {
    throw DimensionError("correlators: need one basis per time step");
  }
  for (std::size_t k = 0; k < bases.size(); ++k) {
    if (bases[k].dim() != p.dim(k)) {
      throw DimensionError("correlators: basis at t" + std::to_string(k) +
                           " has wrong dimension");
    }
  }
}

// Regroups interleaved (mu0,nu0,mu1,nu1,...) into (mu0..mun, nu0..nun).
std::vector<cplx> deinterleave(const std::vector<cplx>& v,
                               const std::vector<std::size_t>& sizes) {
  const std::size_t T = sizes.size();
  std::vector<cplx> out(v.size());
  std::vector<std::size_t> a(T), b(T);
  for (std::size_t f = 0; f < v.size(); ++f) {
    std::size_t rest = f;
    for (std::size_t k = T; k-- > 0;) {
      b[k] = rest % sizes[k];
      rest /= sizes[k];
      a[k] = rest % sizes[k];
      rest /= sizes[k];
    }
    std::size_t g = 0;
    for (std::size_t k = 0; k < T; ++k) g = g * sizes[k] + a[k];
    for (std::size_t k = 0; k < T; ++k) g = g * sizes[k] + b[k];
    out[g] = v[f];
  }
  return out;
}

std::vector<cplx> direct_values(const MultiTimeProcess& p, const BasisSchedule& bases,
                                CorrelatorKind kind) {
  const std::size_t T = p.times();
  std::vector<std::vector<LevelOp>> levels(T);
  std::vector<std::size_t> sizes(T);
  for (std::size_t k = 0; k < T; ++k) {
    const auto& ops = bases[k].ops();
    sizes[k] = ops.size();
    switch (kind) {
      case CorrelatorKind::right:
      case CorrelatorKind::mh:
        for (const auto& s : ops)
          levels[k].push_back([s](const ComplexMatrix& x) { return x * s; });
        break;
      case CorrelatorKind::left:
        for (const auto& s : ops)
          levels[k].push_back([s](const ComplexMatrix& x) { return s * x; });
        break;
      case CorrelatorKind::doubled:
      case CorrelatorKind::mh_doubled:
        for (const auto& sa : ops)
          for (const auto& sb : ops)
            levels[k].push_back(
                [sa, sb](const ComplexMatrix& x) { return sa * x * sb; });
        break;
      case CorrelatorKind::lvn:
        for (const auto& s : ops)
          levels[k].push_back(
              [s](const ComplexMatrix& x) { return 0.5 * (s * x + x * s); });
        break;
    }
  }
  auto v = evaluate_chain(p, levels);
  if (is_doubled(kind)) v = deinterleave(v, sizes);
  if (kind == CorrelatorKind::mh || kind == CorrelatorKind::mh_doubled ||
      kind == CorrelatorKind::lvn) {
    for (auto& z : v) z = cplx(z.real(), 0.0);
  }
  return v;
}

cplx weighted_sum(const QuasiDistribution& q) {
  cplx s = 0.0;
  for (std::size_t f = 0; f < q.size(); ++f) {
    const auto idx = q.multi_index(f);
    double w = 1.0;
    for (std::size_t a = 0; a < idx.size(); ++a) w *= q.axes()[a].values[idx[a]];
    s += w * q.values()[f];
  }
  return s;
}

std::vector<cplx> distribution_values(const MultiTimeProcess& p,
                                      const BasisSchedule& bases, CorrelatorKind kind) {
  const std::size_t T = p.times();
  std::vector<std::vector<ProjectiveMeasurement>> meas(T);
  for (std::size_t k = 0; k < T; ++k)
    for (const auto& s : bases[k].ops()) meas[k].push_back(spectral_measurement(s));

  const bool dbl = is_doubled(kind);
  std::vector<std::size_t> shape;
  for (std::size_t k = 0; k < T; ++k) shape.push_back(meas[k].size());
  if (dbl)
    for (std::size_t k = 0; k < T; ++k) shape.push_back(meas[k].size());
  std::size_t total = 1;
  for (auto s : shape) total *= s;

  std::vector<cplx> out(total);
  std::vector<std::size_t> idx(shape.size());
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rest = f;
    for (std::size_t a = shape.size(); a-- > 0;) {
      idx[a] = rest % shape[a];
      rest /= shape[a];
    }
    MeasurementSchedule ket(T), bra;
    for (std::size_t k = 0; k < T; ++k) ket[k] = meas[k][idx[k]];
    if (dbl) {
      bra.resize(T);
      for (std::size_t k = 0; k < T; ++k) bra[k] = meas[k][idx[T + k]];
    }
    QuasiDistribution q;
    switch (kind) {
      case CorrelatorKind::right: q = kd_right(p, ket); break;
      case CorrelatorKind::left: q = kd_left(p, ket); break;
      case CorrelatorKind::mh: q = mh(p, ket); break;
      case CorrelatorKind::lvn: q = lvn(p, ket); break;
      case CorrelatorKind::doubled: q = kd_doubled(p, ket, bra); break;
      case CorrelatorKind::mh_doubled: q = mh_from_kd(kd_doubled(p, ket, bra)); break;
    }
    out[f] = weighted_sum(q);
  }
  return out;
}

// Applies `a` (rows x shape[mode]) along one mode of a row-major tensor.
std::vector<cplx> mode_product(const std::vector<cplx>& in,
                               std::vector<std::size_t>& shape, std::size_t mode,
                               const ComplexMatrix& a) {
  std::size_t pre = 1, post = 1;
  for (std::size_t m = 0; m < mode; ++m) pre *= shape[m];
  for (std::size_t m = mode + 1; m < shape.size(); ++m) post *= shape[m];
  const std::size_t old_n = shape[mode], new_n = a.rows();
  std::vector<cplx> out(pre * new_n * post);
  for (std::size_t i = 0; i < pre; ++i)
    for (std::size_t r = 0; r < new_n; ++r) {
      cplx* o = out.data() + (i * new_n + r) * post;
      for (std::size_t c = 0; c < old_n; ++c) {
        const cplx w = a(r, c);
        if (w == cplx(0.0, 0.0)) continue;
        const cplx* src = in.data() + (i * old_n + c) * post;
        for (std::size_t q = 0; q < post; ++q) o[q] += w * src[q];
      }
    }
  shape[mode] = new_n;
  return out;
}

// Factor layout for a time profile: latest first, doubled L then R.
std::vector<StateFactor> factor_layout(const std::vector<std::size_t>& dims, bool dbl) {
  std::vector<StateFactor> f;
  const std::size_t T = dims.size();
  if (!dbl) {
    for (std::size_t q = 0; q < T; ++q) f.push_back({T - 1 - q, Block::single, dims[T - 1 - q]});
    return f;
  }
  for (std::size_t q = 0; q < T; ++q) f.push_back({T - 1 - q, Block::ket, dims[T - 1 - q]});
  for (std::size_t q = 0; q < T; ++q) f.push_back({T - 1 - q, Block::bra, dims[T - 1 - q]});
  return f;
}

// Mode index (ascending time, ket block first) of each factor.
std::vector<std::size_t> factor_modes(const std::vector<StateFactor>& f, std::size_t T) {
  std::vector<std::size_t> m;
  for (const auto& x : f) m.push_back(x.block == Block::bra ? T + x.time : x.time);
  return m;
}

// Walks all (row, col) of a factorized operator, exposing per-mode (i, j).
template <typename Fn>
void for_each_entry(const std::vector<StateFactor>& factors,
                    const std::vector<std::size_t>& modes, std::size_t nmodes, Fn fn) {
  const std::size_t nf = factors.size();
  std::size_t side = 1;
  for (const auto& f : factors) side *= f.dim;
  std::vector<std::size_t> ri(nf), ci(nf), pair(nmodes);
  for (std::size_t r = 0; r < side; ++r) {
    std::size_t rest = r;
    for (std::size_t q = nf; q-- > 0;) {
      ri[q] = rest % factors[q].dim;
      rest /= factors[q].dim;
    }
    for (std::size_t c = 0; c < side; ++c) {
      rest = c;
      for (std::size_t q = nf; q-- > 0;) {
        ci[q] = rest % factors[q].dim;
        rest /= factors[q].dim;
      }
      for (std::size_t q = 0; q < nf; ++q)
        pair[modes[q]] = ri[q] * factors[q].dim + ci[q];
      fn(r, c, pair);
    }
  }
}

StateKind state_kind_for(CorrelatorKind k) {
  switch (k) {
    case CorrelatorKind::right: return StateKind::kd_right;
    case CorrelatorKind::left: return StateKind::kd_left;
    case CorrelatorKind::doubled: return StateKind::kd_doubled;
    case CorrelatorKind::mh: return StateKind::mh;
    case CorrelatorKind::mh_doubled: return StateKind::mh_doubled;
    case CorrelatorKind::lvn: return StateKind::pdo;
  }
  return StateKind::kd_right;
}

CorrelatorKind correlator_kind_for(StateKind k) {
  switch (k) {
    case StateKind::kd_right: return CorrelatorKind::right;
    case StateKind::kd_left: return CorrelatorKind::left;
    case StateKind::kd_doubled: return CorrelatorKind::doubled;
    case StateKind::mh: return CorrelatorKind::mh;
    case StateKind::mh_doubled: return CorrelatorKind::mh_doubled;
    case StateKind::pdo: return CorrelatorKind::lvn;
  }
  return CorrelatorKind::right;
}

std::size_t flat_of_pairs(const std::vector<std::size_t>& pair,
                          const std::vector<std::size_t>& shape) {
  std::size_t f = 0;
  for (std::size_t m = 0; m < shape.size(); ++m) f = f * shape[m] + pair[m];
  return f;
}

}  // namespace

CorrelatorTensor correlators(const MultiTimeProcess& p, const BasisSchedule& bases,
                             CorrelatorKind kind, CorrelatorMethod method) {
  check_bases(p, bases);
  CorrelatorTensor t;
  t.kind = kind;
  t.dims = p.dims();
  t.values = method == CorrelatorMethod::direct ? direct_values(p, bases, kind)
                                                : distribution_values(p, bases, kind);
  return t;
}

TemporalStateOperator reconstruct_state(const CorrelatorTensor& t,
                                        const BasisSchedule& bases) {
  const std::size_t T = t.dims.size();
  if (bases.size() != T) throw DimensionError("reconstruct_state: basis count mismatch");
  for (std::size_t k = 0; k < T; ++k) {
    if (bases[k].dim() != t.dims[k]) {
      throw DimensionError("reconstruct_state: basis dimension mismatch");
    }
  }
  auto shape = t.shape();
  std::size_t expect = 1;
  for (auto s : shape) expect *= s;
  if (t.values.size() != expect) {
    throw DimensionError("reconstruct_state: tensor size does not match shape");
  }
  const bool dbl = is_doubled(t.kind);
  const std::size_t nmodes = shape.size();

  std::vector<cplx> v = t.values;
  double prefactor = 1.0;
  for (std::size_t m = 0; m < nmodes; ++m) {
    const HSBasis& b = bases[m % T];
    const std::size_t d = b.dim();
    prefactor /= static_cast<double>(d);
    ComplexMatrix s(d * d, b.size());
    for (std::size_t mu = 0; mu < b.size(); ++mu)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s(i * d + j, mu) = b[mu](i, j);
    v = mode_product(v, shape, m, s);
  }

  TemporalStateOperator y;
  y.kind = state_kind_for(t.kind);
  y.factors = factor_layout(t.dims, dbl);
  const auto modes = factor_modes(y.factors, T);
  std::size_t side = 1;
  for (const auto& f : y.factors) side *= f.dim;
  y.matrix = ComplexMatrix(side, side);
  for_each_entry(y.factors, modes, nmodes,
                 [&](std::size_t r, std::size_t c, const std::vector<std::size_t>& pair) {
                   y.matrix(r, c) = prefactor * v[flat_of_pairs(pair, shape)];
                 });
  return y;
}

CorrelatorTensor state_correlators(const TemporalStateOperator& y,
                                   const BasisSchedule& bases) {
  const bool dbl = is_doubled(y.kind);
  const std::size_t T = bases.size();
  const std::size_t nmodes = dbl ? 2 * T : T;
  if (y.factors.size() != nmodes) {
    throw DimensionError("state_correlators: factor count mismatch");
  }
  CorrelatorTensor t;
  t.kind = correlator_kind_for(y.kind);
  t.dims.resize(T);
  for (const auto& f : y.factors) t.dims[f.time] = f.dim;
  for (std::size_t k = 0; k < T; ++k) {
    if (bases[k].dim() != t.dims[k]) {
      throw DimensionError("state_correlators: basis dimension mismatch");
    }
  }
  std::vector<std::size_t> shape;
  for (std::size_t m = 0; m < nmodes; ++m) shape.push_back(t.dims[m % T] * t.dims[m % T]);
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  std::vector<cplx> v(total);
  const auto modes = factor_modes(y.factors, T);
  for_each_entry(y.factors, modes, nmodes,
                 [&](std::size_t r, std::size_t c, const std::vector<std::size_t>& pair) {
                   v[flat_of_pairs(pair, shape)] = y.matrix(r, c);
                 });
  for (std::size_t m = 0; m < nmodes; ++m) {
    const HSBasis& b = bases[m % T];
    const std::size_t d = b.dim();
    ComplexMatrix s(b.size(), d * d);
    for (std::size_t mu = 0; mu < b.size(); ++mu)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s(mu, i * d + j) = b[mu](j, i);
    v = mode_product(v, shape, m, s);
  }
  t.values = std::move(v);
  return t;
}

ComplexMatrix star(const ComplexMatrix& n, const ComplexMatrix& m,
                   std::size_t middle_dim) {
  require_square(n, "star");
  require_square(m, "star");
  if (middle_dim == 0 || n.rows() % middle_dim || m.rows() % middle_dim) {
    throw DimensionError("star: middle dimension does not divide operand sizes");
  }
  const std::size_t dc = n.rows() / middle_dim;
  const std::size_t da = m.rows() / middle_dim;
  return kron(n, ComplexMatrix::identity(da)) * kron(ComplexMatrix::identity(dc), m);
}

ComplexMatrix star_reversed(const ComplexMatrix& m, const ComplexMatrix& n,
                            std::size_t middle_dim) {
  require_square(n, "star_reversed");
  require_square(m, "star_reversed");
  if (middle_dim == 0 || n.rows() % middle_dim || m.rows() % middle_dim) {
    throw DimensionError("star_reversed: middle dimension does not divide operand sizes");
  }
  const std::size_t dc = n.rows() / middle_dim;
  const std::size_t da = m.rows() / middle_dim;
  return kron(ComplexMatrix::identity(dc), m) * kron(n, ComplexMatrix::identity(da));
}

TemporalStateOperator kd_state_recursive(const MultiTimeProcess& p, StateKind kind) {
  if (kind != StateKind::kd_right && kind != StateKind::kd_left) {
    throw ValidationError("kd_state_recursive: kind must be kd_right or kd_left");
  }
  ComplexMatrix y = p.rho0().matrix();
  for (std::size_t k = 1; k <= p.steps(); ++k) {
    y = star(jamiolkowski(p.channel(k)), y, p.dim(k - 1));
  }
  TemporalStateOperator out;
  out.kind = kind;
  out.factors = factor_layout(p.dims(), false);
  out.matrix = kind == StateKind::kd_right ? std::move(y) : y.adjoint();
  return out;
}

TemporalStateOperator pdo(const MultiTimeProcess& p) {
  ComplexMatrix r = p.rho0().matrix();
  for (std::size_t k = 1; k <= p.steps(); ++k) {
    const ComplexMatrix j = jamiolkowski(p.channel(k));
    const std::size_t mid = p.dim(k - 1);
    r = 0.5 * (star(j, r, mid) + star_reversed(r, j, mid));
  }
  TemporalStateOperator out;
  out.kind = StateKind::pdo;
  out.factors = factor_layout(p.dims(), false);
  out.matrix = std::move(r);
  return out;
}

TemporalStateOperator mh_state(const TemporalStateOperator& y) {
  TemporalStateOperator out = y;
  switch (y.kind) {
    case StateKind::kd_right:
    case StateKind::kd_left: out.kind = StateKind::mh; break;
    case StateKind::kd_doubled: out.kind = StateKind::mh_doubled; break;
    default:
      throw ValidationError(std::string("mh_state: expected a KD state, got ") +
                            to_string(y.kind));
  }
  out.matrix = 0.5 * (y.matrix + y.matrix.adjoint());
  return out;
}

cplx born_eval(const TemporalStateOperator& y,
               const std::vector<ComplexMatrix>& projectors) {
  if (projectors.size() != y.factors.size()) {
    throw DimensionError("born_eval: expected " + std::to_string(y.factors.size()) +
                         " projectors");
  }
  for (std::size_t q = 0; q < projectors.size(); ++q) {
    if (projectors[q].rows() != y.factors[q].dim || !projectors[q].is_square()) {
      throw DimensionError("born_eval: projector " + std::to_string(q) +
                           " has wrong dimension");
    }
  }
  return trace_product(kron_all(projectors), y.matrix);
}

cplx born_eval(const TemporalStateOperator& y, const std::vector<ComplexMatrix>& ket,
               const std::vector<ComplexMatrix>& bra) {
  if (!is_doubled(y.kind)) {
    throw ValidationError("born_eval: ket/bra form requires a doubled state");
  }
  std::vector<ComplexMatrix> all = ket;
  all.insert(all.end(), bra.begin(), bra.end());
  return born_eval(y, all);
}

TemporalStateOperator reduce_state(const TemporalStateOperator& y,
                                   const std::vector<std::size_t>& keep_times) {
  if (keep_times.empty()) throw DimensionError("reduce_state: keep set is empty");
  std::vector<std::size_t> keep;
  for (std::size_t q = 0; q < y.factors.size(); ++q)
    for (std::size_t t : keep_times)
      if (y.factors[q].time == t) keep.push_back(q);
  for (std::size_t t : keep_times) {
    bool found = false;
    for (const auto& f : y.factors) found = found || f.time == t;
    if (!found) throw DimensionError("reduce_state: unknown time " + std::to_string(t));
  }
  TemporalStateOperator out;
  out.kind = y.kind;
  for (std::size_t q : keep) out.factors.push_back(y.factors[q]);
  out.matrix = partial_trace(y.matrix, y.profile(), keep);
  return out;
}

TemporalStateOperator trace_block(const TemporalStateOperator& y, Block block) {
  if (!is_doubled(y.kind) || block == Block::single) {
    throw ValidationError("trace_block: requires a doubled state and a ket/bra block");
  }
  std::vector<std::size_t> keep;
  TemporalStateOperator out;
  for (std::size_t q = 0; q < y.factors.size(); ++q) {
    if (y.factors[q].block != block) {
      keep.push_back(q);
      out.factors.push_back({y.factors[q].time, Block::single, y.factors[q].dim});
    }
  }
  if (y.kind == StateKind::mh_doubled) {
    out.kind = StateKind::mh;
  } else {
    out.kind = block == Block::ket ? StateKind::kd_right : StateKind::kd_left;
  }
  out.matrix = partial_trace(y.matrix, y.profile(), keep);
  return out;
}

}  // namespace tkd
