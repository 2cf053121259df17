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

#include "tkd/charfunc.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "chain_eval.hpp"

namespace tkd {

using detail::evaluate_chain;
using detail::LevelOp;

const char* to_string(CharKind k) {
  switch (k) {
    case CharKind::right: return "right";
    case CharKind::left: return "left";
    case CharKind::doubled: return "doubled";
  }
  return "?";
}

namespace {

void check_observables(const MultiTimeProcess& p, const std::vector<ComplexMatrix>& obs,
                       const char* side) {
  if (obs.size() != p.times()) {
    throw DimensionError(std::string("observable schedule (") + side + "): expected " +
                         std::to_string(p.times()) + " observables, got " +
                         std::to_string(obs.size()));
  }
  for (std::size_t k = 0; k < obs.size(); ++k) {
    if (!obs[k].is_square() || obs[k].rows() != p.dim(k)) {
      throw DimensionError(std::string("observable schedule (") + side +
                           "): wrong dimension at t" + std::to_string(k));
    }
    if (!is_hermitian(obs[k], 1e-9)) {
      throw ValidationError(std::string("observable schedule (") + side +
                            "): observable at t" + std::to_string(k) +
                            " is not Hermitian");
    }
  }
}

void check_point(const MultiTimeProcess& p, const CharPoint& point, CharKind kind) {
  const std::size_t want = kind == CharKind::doubled ? 2 * p.times() : p.times();
  if (point.size() != want) {
    throw DimensionError("characteristic function: point has " +
                         std::to_string(point.size()) + " phases, expected " +
                         std::to_string(want));
  }
}

void check_inputs(const MultiTimeProcess& p, const ObservableSchedule& obs,
                  CharKind kind) {
  if (!p.square_chain()) {
    throw DimensionError("characteristic function: requires a square channel chain");
  }
  if (kind != CharKind::left) check_observables(p, obs.bra, "bra");
  if (kind != CharKind::right) check_observables(p, obs.ket, "ket");
}

}  // namespace

cplx char_value(const MultiTimeProcess& p, const ObservableSchedule& obs,
                const CharPoint& point, CharKind kind) {
  check_inputs(p, obs, kind);
  check_point(p, point, kind);
  const std::size_t T = p.times();
  std::vector<std::vector<LevelOp>> levels(T);
  for (std::size_t k = 0; k < T; ++k) {
    switch (kind) {
      case CharKind::right: {
        auto g = hermitian_phase(obs.bra[k], point[k], -1);
        levels[k].push_back([g](const ComplexMatrix& x) { return x * g; });
        break;
      }
      case CharKind::left: {
        auto g = hermitian_phase(obs.ket[k], point[k], +1);
        levels[k].push_back([g](const ComplexMatrix& x) { return g * x; });
        break;
      }
      case CharKind::doubled: {
        auto ga = hermitian_phase(obs.ket[k], point[k], +1);
        auto gb = hermitian_phase(obs.bra[k], point[T + k], -1);
        levels[k].push_back([ga, gb](const ComplexMatrix& x) { return ga * x * gb; });
        break;
      }
    }
  }
  return evaluate_chain(p, levels).front();
}

CharSamples char_fn(const MultiTimeProcess& p, const ObservableSchedule& obs,
                    const std::vector<CharPoint>& grid, CharKind kind) {
  CharSamples s;
  s.kind = kind;
  s.grid = grid;
  s.values.reserve(grid.size());
  for (const auto& pt : grid) s.values.push_back(char_value(p, obs, pt, kind));
  return s;
}

MeasurementSchedule observable_schedule(const std::vector<ComplexMatrix>& observables) {
  MeasurementSchedule s;
  for (const auto& o : observables) s.push_back(spectral_measurement(o));
  return s;
}

QuasiDistribution char_distribution(const MultiTimeProcess& p,
                                    const ObservableSchedule& obs, CharKind kind) {
  check_inputs(p, obs, kind);
  switch (kind) {
    case CharKind::right: return kd_right(p, observable_schedule(obs.bra));
    case CharKind::left: return kd_left(p, observable_schedule(obs.ket));
    case CharKind::doubled:
      return kd_doubled(p, observable_schedule(obs.ket), observable_schedule(obs.bra));
  }
  throw ValidationError("char_distribution: unknown kind");
}

namespace {

int axis_sign(DistKind kind, Block block) {
  if (block == Block::ket) return +1;
  if (block == Block::bra) return -1;
  return kind == DistKind::kd_left ? +1 : -1;
}

}  // namespace

cplx char_from_distribution(const QuasiDistribution& q, const CharPoint& point) {
  if (point.size() != q.axes().size()) {
    throw DimensionError("char_from_distribution: point rank mismatch");
  }
  cplx s = 0.0;
  for (std::size_t f = 0; f < q.size(); ++f) {
    const auto idx = q.multi_index(f);
    double phase = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const auto& ax = q.axes()[a];
      phase += axis_sign(q.kind(), ax.block) * ax.values[idx[a]] * point[a];
    }
    s += q.values()[f] * std::polar(1.0, phase);
  }
  return s;
}

std::vector<std::vector<double>> default_nodes(
    const std::vector<std::vector<double>>& spectra) {
  std::vector<std::vector<double>> nodes;
  for (const auto& sp : spectra) {
    if (sp.empty()) throw DimensionError("default_nodes: empty spectrum");
    double spread = 0.0;
    for (double a : sp)
      for (double b : sp) spread = std::max(spread, std::abs(a - b));
    const double theta = std::numbers::pi / (1.0 + spread);
    std::vector<double> u;
    for (std::size_t j = 0; j < sp.size(); ++j) u.push_back(static_cast<double>(j) * theta);
    nodes.push_back(std::move(u));
  }
  return nodes;
}

std::vector<CharPoint> tensor_grid(const std::vector<std::vector<double>>& nodes) {
  std::size_t total = 1;
  for (const auto& n : nodes) total *= n.size();
  std::vector<CharPoint> grid;
  grid.reserve(total);
  for (std::size_t f = 0; f < total; ++f) {
    CharPoint pt(nodes.size());
    std::size_t rest = f;
    for (std::size_t a = nodes.size(); a-- > 0;) {
      pt[a] = nodes[a][rest % nodes[a].size()];
      rest /= nodes[a].size();
    }
    grid.push_back(std::move(pt));
  }
  return grid;
}

InversionResult invert_char(const CharSamples& samples,
                            const std::vector<std::vector<double>>& spectra) {
  const std::size_t rank = spectra.size();
  std::size_t total = 1;
  for (const auto& sp : spectra) {
    if (sp.empty()) throw DimensionError("invert_char: empty spectrum");
    total *= sp.size();
  }
  if (samples.grid.size() != total || samples.values.size() != total) {
    throw DimensionError("invert_char: grid must hold exactly prod(m_axis) points");
  }
  for (const auto& pt : samples.grid) {
    if (pt.size() != rank) throw DimensionError("invert_char: point rank mismatch");
  }
  const std::size_t T = samples.kind == CharKind::doubled ? rank / 2 : rank;
  if (samples.kind == CharKind::doubled && rank % 2) {
    throw DimensionError("invert_char: doubled grids need an even rank");
  }

  // Per-axis nodes read off the row-major grid, then checked for the full
  // tensor-product structure.
  std::vector<std::vector<double>> nodes(rank);
  std::vector<std::size_t> stride(rank, 1);
  for (std::size_t a = rank; a-- > 1;) stride[a - 1] = stride[a] * spectra[a].size();
  for (std::size_t a = 0; a < rank; ++a)
    for (std::size_t j = 0; j < spectra[a].size(); ++j)
      nodes[a].push_back(samples.grid[j * stride[a]][a]);
  const auto expected = tensor_grid(nodes);
  for (std::size_t f = 0; f < total; ++f)
    for (std::size_t a = 0; a < rank; ++a)
      if (expected[f][a] != samples.grid[f][a]) {
        throw DimensionError("invert_char: grid is not a row-major tensor product");
      }

  InversionResult res;
  std::vector<cplx> v = samples.values;
  std::vector<std::size_t> shape;
  for (const auto& sp : spectra) shape.push_back(sp.size());
  for (std::size_t a = 0; a < rank; ++a) {
    int s;
    if (samples.kind == CharKind::right) s = -1;
    else if (samples.kind == CharKind::left) s = +1;
    else s = a < T ? +1 : -1;
    const std::size_t m = spectra[a].size();
    ComplexMatrix vm(m, m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        vm(j, k) = std::polar(1.0, s * nodes[a][j] * spectra[a][k]);
    const double cond = condition_number(vm);
    res.condition_numbers.push_back(cond);
    if (!(cond <= kMaxInversionCondition)) {
      throw ValidationError("invert_char: transform on axis " + std::to_string(a) +
                            " is singular or ill-conditioned (condition number " +
                            std::to_string(cond) + ")");
    }
    const ComplexMatrix inv = inverse(vm);
    // Mode product along axis a.
    std::size_t pre = 1, post = 1;
    for (std::size_t b = 0; b < a; ++b) pre *= shape[b];
    for (std::size_t b = a + 1; b < rank; ++b) post *= shape[b];
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < pre; ++i)
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
          const cplx w = inv(r, c);
          for (std::size_t q = 0; q < post; ++q)
            out[(i * m + r) * post + q] += w * v[(i * m + c) * post + q];
        }
    v = std::move(out);
  }

  std::vector<OutcomeAxis> axes;
  for (std::size_t a = 0; a < rank; ++a) {
    OutcomeAxis ax;
    ax.time = a % T;
    ax.block = samples.kind == CharKind::doubled ? (a < T ? Block::ket : Block::bra)
                                                 : Block::single;
    ax.values = spectra[a];
    for (double x : spectra[a]) ax.labels.push_back({x});
    axes.push_back(std::move(ax));
  }
  DistKind dk = samples.kind == CharKind::right  ? DistKind::kd_right
                : samples.kind == CharKind::left ? DistKind::kd_left
                                                 : DistKind::kd_doubled;
  res.distribution = QuasiDistribution(dk, std::move(axes), std::move(v));
  return res;
}

namespace {

struct Registers {
  std::size_t d = 0;
  std::vector<std::size_t> env;  // one per step
  std::size_t total() const {
    std::size_t t = d;
    for (auto r : env) t *= r;
    return t;
  }
};

// Embeds a unitary on system (x) env_k into system (x) env_1 (x) ... (x) env_n.
ComplexMatrix embed_step(const ComplexMatrix& u, const Registers& reg, std::size_t k) {
  const std::size_t D = reg.total();
  const std::size_t rk = reg.env[k];
  std::size_t inner = 1;  // product of env dims after env_k
  for (std::size_t j = k + 1; j < reg.env.size(); ++j) inner *= reg.env[j];
  std::size_t outer_env = 1;  // product of env dims before env_k
  for (std::size_t j = 0; j < k; ++j) outer_env *= reg.env[j];
  ComplexMatrix g(D, D);
  auto index = [&](std::size_t s, std::size_t pre, std::size_t ek, std::size_t post) {
    return ((s * outer_env + pre) * rk + ek) * inner + post;
  };
  for (std::size_t s = 0; s < reg.d; ++s)
    for (std::size_t e = 0; e < rk; ++e)
      for (std::size_t s2 = 0; s2 < reg.d; ++s2)
        for (std::size_t e2 = 0; e2 < rk; ++e2) {
          const cplx w = u(s2 * rk + e2, s * rk + e);
          if (w == cplx(0.0, 0.0)) continue;
          for (std::size_t pre = 0; pre < outer_env; ++pre)
            for (std::size_t post = 0; post < inner; ++post)
              g(index(s2, pre, e2, post), index(s, pre, e, post)) = w;
        }
  return g;
}

struct AncillaMoments {
  double x = 0.0;
  double y = 0.0;
  std::size_t register_dim = 0;
};

AncillaMoments run_interferometer(const MultiTimeProcess& p, const ObservableSchedule& obs,
                                  const CharPoint& point, CharKind kind, int gate_sign) {
  check_inputs(p, obs, kind);
  check_point(p, point, kind);
  const std::size_t T = p.times();
  Registers reg;
  reg.d = p.dim(0);
  std::vector<ComplexMatrix> dil;
  for (const auto& c : p.channels()) {
    Dilation dl = stinespring(c);
    reg.env.push_back(dl.env_dim);
    dil.push_back(std::move(dl.u));
  }
  const std::size_t D = reg.total();
  const ComplexMatrix env_id = ComplexMatrix::identity(D / reg.d);

  std::vector<ComplexMatrix> steps;
  for (std::size_t k = 0; k < dil.size(); ++k) steps.push_back(embed_step(dil[k], reg, k));
  auto phase = [&](const ComplexMatrix& h, double u) {
    return kron(hermitian_phase(h, u, gate_sign), env_id);
  };
  auto plain = [&]() {
    ComplexMatrix g = ComplexMatrix::identity(D);
    for (const auto& s : steps) g = s * g;
    return g;
  };
  auto interleaved = [&](const std::vector<ComplexMatrix>& obsv, std::size_t offset) {
    ComplexMatrix g = phase(obsv[0], point[offset]);
    for (std::size_t k = 1; k < T; ++k) g = phase(obsv[k], point[offset + k]) * steps[k - 1] * g;
    return g;
  };

  ComplexMatrix g1, g2;
  switch (kind) {
    case CharKind::right:
      g1 = plain();
      g2 = interleaved(obs.bra, 0);
      break;
    case CharKind::left:
      g1 = interleaved(obs.ket, 0);
      g2 = plain();
      break;
    case CharKind::doubled:
      g1 = interleaved(obs.ket, 0);
      g2 = interleaved(obs.bra, T);
      break;
  }

  std::vector<cplx> env0(D / reg.d);
  env0[0] = 1.0;
  const ComplexMatrix sys = kron(p.rho0().matrix(), projector(env0));
  const ComplexMatrix plus = ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  const ComplexMatrix full = kron(plus, sys);

  ComplexMatrix p0 = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  ComplexMatrix p1 = ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}});
  const ComplexMatrix ctrl = kron(p0, g1) + kron(p1, g2);
  const ComplexMatrix out = ctrl * full * ctrl.adjoint();
  const ComplexMatrix anc = partial_trace(out, DimProfile{{2, D}}, {0});

  AncillaMoments m;
  m.x = trace_product(pauli::X(), anc).real();
  m.y = trace_product(pauli::Y(), anc).real();
  m.register_dim = 2 * D;
  return m;
}

CircuitConvention calibrate() {
  // Reference: |0><0|, identity step, X at t0 and Y at t1.
  MultiTimeProcess ref(DensityOperator::pure({1.0, 0.0}), {identity_channel(2)});
  ObservableSchedule obs{{pauli::Z(), pauli::X()}, {pauli::X(), pauli::Y()}};
  const CharPoint pt{0.37, 1.21};
  const cplx want = char_value(ref, obs, pt, CharKind::right);
  for (int gate : {+1, -1}) {
    const auto m = run_interferometer(ref, obs, pt, CharKind::right, gate);
    for (int readout : {+1, -1}) {
      if (std::abs(cplx(m.x, readout * m.y) - want) < 1e-10) return {readout, gate};
    }
  }
  throw ValidationError("circuit calibration failed: no sign convention reproduces "
                        "the characteristic function");
}

std::uint64_t hash_point(const CharPoint& point) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double x : point) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace

const CircuitConvention& circuit_convention() {
  static const CircuitConvention conv = calibrate();
  return conv;
}

CircuitResult circuit_sim(const MultiTimeProcess& p, const ObservableSchedule& obs,
                          const CharPoint& point, CharKind kind,
                          const CircuitOptions& opts) {
  const auto& conv = circuit_convention();
  const auto m = run_interferometer(p, obs, point, kind, conv.gate_phase_sign);
  CircuitResult r;
  r.exact = cplx(m.x, conv.readout_sign * m.y);
  r.readout_sign = conv.readout_sign;
  r.gate_phase_sign = conv.gate_phase_sign;
  r.register_dim = m.register_dim;
  if (opts.shots) {
    const std::uint64_t n = *opts.shots;
    if (n < 2) throw ValidationError("circuit_sim: need at least 2 shots");
    r.shots_x = n - n / 2;
    r.shots_y = n / 2;
    const std::uint64_t h = hash_point(point);
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed),
                      static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    std::mt19937_64 rng(seq);
    auto clamp01 = [](double q) { return std::min(1.0, std::max(0.0, q)); };
    std::binomial_distribution<std::uint64_t> bx(r.shots_x, clamp01((1.0 + m.x) / 2.0));
    std::binomial_distribution<std::uint64_t> by(r.shots_y, clamp01((1.0 + m.y) / 2.0));
    const double ex = 2.0 * static_cast<double>(bx(rng)) / static_cast<double>(r.shots_x) - 1.0;
    const double ey = 2.0 * static_cast<double>(by(rng)) / static_cast<double>(r.shots_y) - 1.0;
    r.estimate = cplx(ex, conv.readout_sign * ey);
    r.se_re = std::sqrt(std::max(0.0, 1.0 - m.x * m.x) / static_cast<double>(r.shots_x));
    r.se_im = std::sqrt(std::max(0.0, 1.0 - m.y * m.y) / static_cast<double>(r.shots_y));
  }
  return r;
}

}  // namespace tkd
