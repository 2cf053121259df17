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

#include "tkd/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "chain_eval.hpp"

namespace tkd {

using detail::evaluate_chain;
using detail::LevelOp;

const char* to_string(DistKind k) {
  switch (k) {
    case DistKind::kd_right: return "kd_right";
    case DistKind::kd_left: return "kd_left";
    case DistKind::kd_doubled: return "kd_doubled";
    case DistKind::mh: return "mh";
    case DistKind::mh_doubled: return "mh_doubled";
    case DistKind::lvn: return "lvn";
  }
  return "?";
}

bool is_doubled(DistKind k) {
  return k == DistKind::kd_doubled || k == DistKind::mh_doubled;
}

QuasiDistribution::QuasiDistribution(DistKind kind, std::vector<OutcomeAxis> axes,
                                     std::vector<cplx> values)
    : kind_(kind), axes_(std::move(axes)), values_(std::move(values)) {
  std::size_t n = 1;
  for (const auto& a : axes_) {
    if (a.values.empty()) throw DimensionError("QuasiDistribution: empty axis");
    n *= a.values.size();
  }
  if (n != values_.size()) {
    throw DimensionError("QuasiDistribution: value count does not match axes");
  }
}

std::vector<std::size_t> QuasiDistribution::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.values.size());
  return s;
}

std::size_t QuasiDistribution::flat_index(const std::vector<std::size_t>& idx) const {
  if (idx.size() != axes_.size()) throw DimensionError("flat_index: rank mismatch");
  std::size_t f = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (idx[a] >= axes_[a].values.size()) {
      throw DimensionError("flat_index: index out of range");
    }
    f = f * axes_[a].values.size() + idx[a];
  }
  return f;
}

std::vector<std::size_t> QuasiDistribution::multi_index(std::size_t flat) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    idx[a] = flat % axes_[a].values.size();
    flat /= axes_[a].values.size();
  }
  return idx;
}

const cplx& QuasiDistribution::at(const std::vector<std::size_t>& idx) const {
  return values_[flat_index(idx)];
}

cplx QuasiDistribution::total() const {
  cplx s = 0.0;
  for (const auto& v : values_) s += v;
  return s;
}

namespace {

void check_schedule(const MultiTimeProcess& p, const MeasurementSchedule& s,
                    const char* what) {
  if (s.size() != p.times()) {
    throw DimensionError(std::string(what) + ": schedule has " +
                         std::to_string(s.size()) + " entries, process has " +
                         std::to_string(p.times()) + " time points");
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k].dim() != p.dim(k)) {
      throw DimensionError(std::string(what) + ": measurement at t" +
                           std::to_string(k) + " has dim " +
                           std::to_string(s[k].dim()) + ", expected " +
                           std::to_string(p.dim(k)));
    }
  }
}

std::vector<OutcomeAxis> axes_for(const MeasurementSchedule& s, Block b) {
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

template <typename Make>
std::vector<std::vector<LevelOp>> levels_for(const MeasurementSchedule& s, Make make) {
  std::vector<std::vector<LevelOp>> levels;
  for (const auto& m : s) {
    std::vector<LevelOp> ops;
    for (const auto& o : m.outcomes()) ops.push_back(make(o.projector));
    levels.push_back(std::move(ops));
  }
  return levels;
}

void require_square_chain(const MultiTimeProcess& p, const char* what) {
  if (!p.square_chain()) {
    throw DimensionError(std::string(what) + ": requires d_in == d_out for every channel");
  }
}

}  // namespace

QuasiDistribution kd_right(const MultiTimeProcess& p, const MeasurementSchedule& s) {
  check_schedule(p, s, "kd_right");
  auto levels = levels_for(s, [](const ComplexMatrix& pr) -> LevelOp {
    return [pr](const ComplexMatrix& x) { return x * pr; };
  });
  return QuasiDistribution(DistKind::kd_right, axes_for(s, Block::single),
                           evaluate_chain(p, levels));
}

QuasiDistribution kd_left(const MultiTimeProcess& p, const MeasurementSchedule& s) {
  check_schedule(p, s, "kd_left");
  auto levels = levels_for(s, [](const ComplexMatrix& pr) -> LevelOp {
    return [pr](const ComplexMatrix& x) { return pr * x; };
  });
  return QuasiDistribution(DistKind::kd_left, axes_for(s, Block::single),
                           evaluate_chain(p, levels));
}

QuasiDistribution kd_doubled(const MultiTimeProcess& p, const MeasurementSchedule& ket,
                             const MeasurementSchedule& bra) {
  check_schedule(p, ket, "kd_doubled(ket)");
  check_schedule(p, bra, "kd_doubled(bra)");
  const std::size_t T = p.times();
  std::vector<std::vector<LevelOp>> levels(T);
  for (std::size_t k = 0; k < T; ++k)
    for (const auto& a : ket[k].outcomes())
      for (const auto& b : bra[k].outcomes()) {
        levels[k].push_back([pa = a.projector, pb = b.projector](const ComplexMatrix& x) {
          return pa * x * pb;
        });
      }
  const auto interleaved = evaluate_chain(p, levels);

  // Interleaved order is (a0,b0,a1,b1,...); regroup to (a0..an, b0..bn).
  std::vector<OutcomeAxis> axes = axes_for(ket, Block::ket);
  auto bra_axes = axes_for(bra, Block::bra);
  axes.insert(axes.end(), bra_axes.begin(), bra_axes.end());
  std::vector<std::size_t> na(T), nb(T);
  for (std::size_t k = 0; k < T; ++k) {
    na[k] = ket[k].size();
    nb[k] = bra[k].size();
  }
  std::vector<cplx> values(interleaved.size());
  std::vector<std::size_t> ia(T, 0), ib(T, 0);
  for (std::size_t f = 0; f < interleaved.size(); ++f) {
    std::size_t rest = f;
    for (std::size_t k = T; k-- > 0;) {
      ib[k] = rest % nb[k];
      rest /= nb[k];
      ia[k] = rest % na[k];
      rest /= na[k];
    }
    std::size_t g = 0;
    for (std::size_t k = 0; k < T; ++k) g = g * na[k] + ia[k];
    for (std::size_t k = 0; k < T; ++k) g = g * nb[k] + ib[k];
    values[g] = interleaved[f];
  }
  return QuasiDistribution(DistKind::kd_doubled, std::move(axes), std::move(values));
}

QuasiDistribution lvn(const MultiTimeProcess& p, const MeasurementSchedule& s) {
  check_schedule(p, s, "lvn");
  auto levels = levels_for(s, [](const ComplexMatrix& pr) -> LevelOp {
    return [pr](const ComplexMatrix& x) { return pr * x * pr; };
  });
  auto values = evaluate_chain(p, levels);
  for (auto& v : values) v = cplx(v.real(), 0.0);
  return QuasiDistribution(DistKind::lvn, axes_for(s, Block::single), std::move(values));
}

QuasiDistribution mh_from_kd(const QuasiDistribution& q) {
  DistKind k;
  switch (q.kind()) {
    case DistKind::kd_right:
    case DistKind::kd_left: k = DistKind::mh; break;
    case DistKind::kd_doubled: k = DistKind::mh_doubled; break;
    default:
      throw ValidationError(std::string("mh_from_kd: expected a KD distribution, got ") +
                            to_string(q.kind()));
  }
  std::vector<cplx> v;
  v.reserve(q.size());
  for (const auto& z : q.values()) v.emplace_back(z.real(), 0.0);
  return QuasiDistribution(k, q.axes(), std::move(v));
}

QuasiDistribution mh(const MultiTimeProcess& p, const MeasurementSchedule& s) {
  return mh_from_kd(kd_right(p, s));
}

QuasiDistribution marginalize(const QuasiDistribution& q,
                              const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw DimensionError("marginalize: keep set is empty");
  const std::size_t rank = q.axes().size();
  std::vector<std::size_t> ks = keep;
  std::sort(ks.begin(), ks.end());
  if (std::adjacent_find(ks.begin(), ks.end()) != ks.end()) {
    throw DimensionError("marginalize: duplicate axis");
  }
  if (ks.back() >= rank) throw DimensionError("marginalize: axis out of range");

  std::vector<OutcomeAxis> axes;
  for (std::size_t a : ks) axes.push_back(q.axes()[a]);
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  std::vector<cplx> out(n);
  for (std::size_t f = 0; f < q.size(); ++f) {
    const auto idx = q.multi_index(f);
    std::size_t g = 0;
    for (std::size_t a : ks) g = g * q.axes()[a].values.size() + idx[a];
    out[g] += q.values()[f];
  }
  return QuasiDistribution(q.kind(), std::move(axes), std::move(out));
}

std::vector<cplx> coarse_grain(const QuasiDistribution& q,
                               const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<int> seen(q.size(), 0);
  std::vector<cplx> out;
  for (const auto& block : partition) {
    if (block.empty()) throw ValidationError("coarse_grain: empty block");
    cplx s = 0.0;
    for (std::size_t f : block) {
      if (f >= q.size()) throw DimensionError("coarse_grain: index out of range");
      if (seen[f]++) throw ValidationError("coarse_grain: blocks overlap");
      s += q.values()[f];
    }
    out.push_back(s);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw ValidationError("coarse_grain: partition does not cover every tuple");
  }
  return out;
}

double nonclassicality(std::span<const cplx> values, NcVariant v) {
  double s = 0.0;
  for (const auto& z : values) s += std::abs(z);
  return v == NcVariant::linear ? s - 1.0 : std::log(s);
}

double nonclassicality(const QuasiDistribution& q, NcVariant v) {
  return nonclassicality(std::span<const cplx>(q.values()), v);
}

bool is_classical(const QuasiDistribution& q, double tol) {
  return std::all_of(q.values().begin(), q.values().end(), [tol](const cplx& z) {
    return std::abs(z.imag()) <= tol && z.real() >= -tol;
  });
}

namespace {

// Enumerates Y_k(c_k, ..., c_n) from the last time backwards:
//   Y_n = leaf(c_n), Y_k = step(k, c_k, E_{k+1}^dag(Y_{k+1})).
// `visit(k, tuple, Y_k, back)` is called at every node, where `back` is
// E_{k+1}^dag(Y_{k+1}) (empty at k = n).
struct BackWalker {
  const MultiTimeProcess& p;
  std::vector<std::size_t> counts;
  std::function<ComplexMatrix(std::size_t, std::size_t)> leaf;
  std::function<ComplexMatrix(std::size_t, std::size_t, const ComplexMatrix&)> step;
  std::function<void(std::size_t, const std::vector<std::size_t>&, const ComplexMatrix&,
                     const ComplexMatrix*)>
      visit;

  void run() {
    const std::size_t n = p.steps();
    std::vector<std::size_t> tuple(n + 1, 0);
    for (std::size_t c = 0; c < counts[n]; ++c) {
      tuple[n] = c;
      ComplexMatrix y = leaf(n, c);
      visit(n, tuple, y, nullptr);
      descend(n, y, tuple);
    }
  }

  void descend(std::size_t k, const ComplexMatrix& y, std::vector<std::size_t>& tuple) {
    if (k == 0) return;
    const ComplexMatrix back = adjoint_apply(p.channels()[k - 1], y);
    for (std::size_t c = 0; c < counts[k - 1]; ++c) {
      tuple[k - 1] = c;
      ComplexMatrix z = step(k - 1, c, back);
      visit(k - 1, tuple, z, &back);
      descend(k - 1, z, tuple);
    }
  }
};

std::size_t flat_of(const std::vector<std::size_t>& tuple,
                    const std::vector<std::size_t>& counts) {
  std::size_t f = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) f = f * counts[k] + tuple[k];
  return f;
}

}  // namespace

JointMeasurementOperators joint_ops(const MultiTimeProcess& p,
                                    const MeasurementSchedule& s, DistKind kind) {
  check_schedule(p, s, "joint_ops");
  require_square_chain(p, "joint_ops");
  if (kind != DistKind::kd_right && kind != DistKind::kd_left) {
    throw ValidationError("joint_ops: kind must be kd_right or kd_left "
                          "(use joint_ops_doubled for the doubled kind)");
  }
  std::vector<std::size_t> counts;
  for (const auto& m : s) counts.push_back(m.size());
  JointMeasurementOperators out;
  out.kind = kind;
  out.axes = axes_for(s, Block::single);
  std::size_t total = 1;
  for (auto c : counts) total *= c;
  out.ops.resize(total);

  const bool right = kind == DistKind::kd_right;
  BackWalker w{p, counts, {}, {}, {}};
  w.leaf = [&](std::size_t k, std::size_t c) { return s[k][c].projector; };
  w.step = [&](std::size_t k, std::size_t c, const ComplexMatrix& back) {
    return right ? s[k][c].projector * back : back * s[k][c].projector;
  };
  w.visit = [&](std::size_t k, const std::vector<std::size_t>& tuple,
                const ComplexMatrix& y, const ComplexMatrix*) {
    if (k == 0) out.ops[flat_of(tuple, counts)] = y;
  };
  w.run();
  return out;
}

JointMeasurementOperators joint_ops_doubled(const MultiTimeProcess& p,
                                            const MeasurementSchedule& ket,
                                            const MeasurementSchedule& bra) {
  check_schedule(p, ket, "joint_ops_doubled(ket)");
  check_schedule(p, bra, "joint_ops_doubled(bra)");
  require_square_chain(p, "joint_ops_doubled");
  const std::size_t T = p.times();
  // Pair index c = a * |bra_k| + b at each level.
  std::vector<std::size_t> counts(T);
  for (std::size_t k = 0; k < T; ++k) counts[k] = ket[k].size() * bra[k].size();

  JointMeasurementOperators out;
  out.kind = DistKind::kd_doubled;
  out.axes = axes_for(ket, Block::ket);
  auto bra_axes = axes_for(bra, Block::bra);
  out.axes.insert(out.axes.end(), bra_axes.begin(), bra_axes.end());
  std::size_t total = 1;
  for (auto c : counts) total *= c;
  out.ops.resize(total);

  BackWalker w{p, counts, {}, {}, {}};
  w.leaf = [&](std::size_t k, std::size_t c) {
    const std::size_t nb = bra[k].size();
    return bra[k][c % nb].projector * ket[k][c / nb].projector;
  };
  w.step = [&](std::size_t k, std::size_t c, const ComplexMatrix& back) {
    const std::size_t nb = bra[k].size();
    return bra[k][c % nb].projector * back * ket[k][c / nb].projector;
  };
  w.visit = [&](std::size_t k, const std::vector<std::size_t>& tuple,
                const ComplexMatrix& y, const ComplexMatrix*) {
    if (k != 0) return;
    std::size_t g = 0;
    for (std::size_t t = 0; t < T; ++t) g = g * ket[t].size() + tuple[t] / bra[t].size();
    for (std::size_t t = 0; t < T; ++t) g = g * bra[t].size() + tuple[t] % bra[t].size();
    out.ops[g] = y;
  };
  w.run();
  return out;
}

WitnessReport classicality_witness(const MultiTimeProcess& p,
                                   const MeasurementSchedule& s) {
  check_schedule(p, s, "classicality_witness");
  require_square_chain(p, "classicality_witness");
  WitnessReport r;
  r.nonclassicality = nonclassicality(kd_right(p, s));

  auto consider = [&](double norm, const char* family, std::size_t level,
                      std::vector<std::size_t> tuple) {
    if (norm > r.max_commutator_norm) {
      r.max_commutator_norm = norm;
      r.worst_pair = {family, level, std::move(tuple)};
    }
  };

  std::vector<std::size_t> counts;
  for (const auto& m : s) counts.push_back(m.size());
  BackWalker w{p, counts, {}, {}, {}};
  w.leaf = [&](std::size_t k, std::size_t c) { return s[k][c].projector; };
  w.step = [&](std::size_t k, std::size_t c, const ComplexMatrix& back) {
    return s[k][c].projector * back;
  };
  w.visit = [&](std::size_t k, const std::vector<std::size_t>& tuple,
                const ComplexMatrix&, const ComplexMatrix* back) {
    if (!back) return;
    const double nrm = spectral_norm(commutator(s[k][tuple[k]].projector, *back));
    consider(nrm, k == 0 ? "tail-vs-first" : "nested", k,
             std::vector<std::size_t>(tuple.begin() + static_cast<long>(k), tuple.end()));
  };
  w.run();

  if (p.all_unitary() && p.steps() > 0) {
    // Heisenberg-picture single-time projectors U_1^dag ... U_k^dag P U_k ... U_1.
    std::vector<std::vector<ComplexMatrix>> heis(p.times());
    for (std::size_t k = 0; k < p.times(); ++k)
      for (const auto& o : s[k].outcomes()) {
        ComplexMatrix y = o.projector;
        for (std::size_t j = k; j > 0; --j) y = adjoint_apply(p.channels()[j - 1], y);
        heis[k].push_back(std::move(y));
      }
    for (std::size_t k = 0; k < p.times(); ++k)
      for (std::size_t l = k + 1; l < p.times(); ++l)
        for (std::size_t a = 0; a < heis[k].size(); ++a)
          for (std::size_t b = 0; b < heis[l].size(); ++b) {
            consider(spectral_norm(commutator(heis[k][a], heis[l][b])),
                     "unitary-pairwise", k, {k, a, l, b});
          }
  }
  return r;
}

cplx weak_value(const ComplexMatrix& a, const std::vector<cplx>& pre_state,
                const std::vector<cplx>& post_state) {
  require_square(a, "weak_value");
  if (pre_state.size() != a.rows() || post_state.size() != a.rows()) {
    throw DimensionError("weak_value: state dimension mismatch");
  }
  cplx overlap = 0.0, num = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    overlap += std::conj(post_state[i]) * pre_state[i];
    cplx row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * pre_state[j];
    num += std::conj(post_state[i]) * row;
  }
  if (std::abs(overlap) <= 1e-12) {
    throw ValidationError("weak_value: pre- and post-selected states are orthogonal");
  }
  return num / overlap;
}

}  // namespace tkd
