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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

namespace tkd {
namespace {

using testing::kI;
using testing::max_diff;
using testing::xy_process;

constexpr double kPi = std::numbers::pi;

ObservableSchedule xy_obs() { return {{}, {pauli::X(), pauli::Y()}}; }

std::vector<std::vector<double>> spectra_of(const std::vector<ComplexMatrix>& obs) {
  std::vector<std::vector<double>> out;
  for (const auto& m : observable_schedule(obs)) out.push_back(m.values());
  return out;
}

QuantumChannel dephasing(double p) {
  return QuantumChannel({std::sqrt(1 - p) * pauli::I(), std::sqrt(p) * pauli::Z()});
}

ObservableSchedule random_obs(const std::vector<std::size_t>& dims, rnd::Rng& rng) {
  ObservableSchedule o;
  for (auto d : dims) {
    o.ket.push_back(rnd::random_hermitian(d, rng));
    o.bra.push_back(rnd::random_hermitian(d, rng));
  }
  return o;
}

CharPoint random_point(std::size_t n, rnd::Rng& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  CharPoint p(n);
  for (auto& x : p) x = u(rng);
  return p;
}

TEST(CharFn, OriginIsOne) {
  rnd::Rng rng(71);
  auto p = rnd::random_process({2, 2, 2}, rng);
  auto o = random_obs(p.dims(), rng);
  EXPECT_LT(std::abs(char_value(p, o, {0, 0, 0}, CharKind::right) - 1.0), 1e-14);
  EXPECT_LT(std::abs(char_value(p, o, {0, 0, 0}, CharKind::left) - 1.0), 1e-14);
  EXPECT_LT(std::abs(char_value(p, o, CharPoint(6, 0.0), CharKind::doubled) - 1.0), 1e-14);
}

TEST(CharFn, XyExamples) {
  auto p = xy_process();
  EXPECT_LT(std::abs(char_value(p, xy_obs(), {kPi / 2, 0}, CharKind::right)), 1e-14);
  EXPECT_LT(std::abs(char_value(p, xy_obs(), {0, kPi}, CharKind::right) + 1.0), 1e-14);
}

TEST(CharFn, DoubledRestrictions) {
  rnd::Rng rng(72);
  auto p = rnd::random_process({3, 3}, rng);
  auto o = random_obs(p.dims(), rng);
  for (int t = 0; t < 10; ++t) {
    auto u = random_point(2, rng);
    auto r = char_value(p, o, u, CharKind::right);
    auto l = char_value(p, o, u, CharKind::left);
    EXPECT_LT(std::abs(char_value(p, o, {0, 0, u[0], u[1]}, CharKind::doubled) - r), 1e-12);
    EXPECT_LT(std::abs(char_value(p, o, {u[0], u[1], 0, 0}, CharKind::doubled) - l), 1e-12);
  }
}

TEST(CharFn, LeftIsConjugateOfRightForSharedObservables) {
  rnd::Rng rng(73);
  auto p = rnd::random_process({2, 2, 2}, rng);
  auto o = random_obs(p.dims(), rng);
  o.ket = o.bra;
  auto grid = tensor_grid(default_nodes(spectra_of(o.bra)));
  auto r = char_fn(p, o, grid, CharKind::right);
  auto l = char_fn(p, o, grid, CharKind::left);
  EXPECT_LT(max_diff(l.values, testing::conj_all(r.values)), 1e-12);
}

TEST(CharFn, FourierSumIdentityAndTriangleBound) {
  rnd::Rng rng(74);
  for (auto dims : {std::vector<std::size_t>{2, 2, 2}, {3, 3}}) {
    auto p = rnd::random_process(dims, rng, rnd::ChannelFamily::mixed);
    auto o = random_obs(dims, rng);
    for (auto k : {CharKind::right, CharKind::left, CharKind::doubled}) {
      auto q = char_distribution(p, o, k);
      double l1 = nonclassicality(q) + 1.0;
      std::size_t r = k == CharKind::doubled ? 2 * dims.size() : dims.size();
      for (int t = 0; t < 8; ++t) {
        auto pt = random_point(r, rng);
        auto direct = char_value(p, o, pt, k);
        EXPECT_LT(std::abs(direct - char_from_distribution(q, pt)), 1e-10) << to_string(k);
        EXPECT_LE(std::abs(direct), l1 + 1e-10);
      }
    }
  }
}

TEST(CharFn, RejectsBadInputs) {
  auto p = xy_process();
  EXPECT_THROW(char_value(p, xy_obs(), {0.0}, CharKind::right), DimensionError);
  ObservableSchedule bad{{}, {pauli::X(), ComplexMatrix::identity(3)}};
  EXPECT_THROW(char_value(p, bad, {0, 0}, CharKind::right), DimensionError);
}

TEST(InvertChar, NodesAndConditioning) {
  auto n = default_nodes({{1, -1}, {2, 1, 0}});
  ASSERT_EQ(n.size(), 2u);
  EXPECT_NEAR(n[0][1], kPi / 3, 1e-15);
  EXPECT_NEAR(n[1][2], 2 * kPi / 3, 1e-15);

  MultiTimeProcess p(testing::ket0(), {});
  ObservableSchedule o{{}, {pauli::X()}};
  auto good = char_fn(p, o, {{0.0}, {kPi / 2}}, CharKind::right);
  auto res = invert_char(good, {{1, -1}});
  EXPECT_NEAR(res.condition_numbers[0], 1.0, 1e-12);
  EXPECT_LT(std::abs(res.distribution.values()[0] - 0.5), 1e-14);

  auto bad = char_fn(p, o, {{0.0}, {kPi}}, CharKind::right);
  EXPECT_THROW(invert_char(bad, {{1, -1}}), ValidationError);
  EXPECT_THROW(invert_char(good, {{1, -1, 0}}), DimensionError);
}

TEST(InvertChar, XyRoundTrip) {
  auto p = xy_process();
  auto sp = spectra_of(xy_obs().bra);
  auto s = char_fn(p, xy_obs(), tensor_grid(default_nodes(sp)), CharKind::right);
  auto q = invert_char(s, sp).distribution;
  // X at t0, Y at t1, outcomes +1 first.
  std::vector<cplx> want{(1.0 + kI) / 4.0, (1.0 - kI) / 4.0, (1.0 - kI) / 4.0,
                         (1.0 + kI) / 4.0};
  EXPECT_LT(max_diff(q.values(), want), 1e-10);
}

TEST(InvertChar, RoundTripRandom) {
  rnd::Rng rng(75);
  for (auto dims : {std::vector<std::size_t>{2, 2, 2}, {3, 3}}) {
    auto p = rnd::random_process(dims, rng, rnd::ChannelFamily::kraus);
    auto o = random_obs(dims, rng);
    for (auto k : {CharKind::right, CharKind::left, CharKind::doubled}) {
      auto sp = spectra_of(k == CharKind::right ? o.bra : o.ket);
      if (k == CharKind::doubled) {
        auto b = spectra_of(o.bra);
        sp.insert(sp.end(), b.begin(), b.end());
      }
      auto s = char_fn(p, o, tensor_grid(default_nodes(sp)), k);
      auto q = invert_char(s, sp).distribution;
      EXPECT_LT(max_diff(q.values(), char_distribution(p, o, k).values()), 1e-8)
          << to_string(k);
    }
  }
}

TEST(CircuitSim, ZeroPointGivesOne) {
  rnd::Rng rng(76);
  auto p = rnd::random_process({2, 2}, rng, rnd::ChannelFamily::kraus);
  auto o = random_obs(p.dims(), rng);
  auto r = circuit_sim(p, o, {0, 0}, CharKind::right);
  EXPECT_LT(std::abs(r.exact - 1.0), 1e-12);
}

TEST(CircuitSim, Convention) {
  const auto& c = circuit_convention();
  EXPECT_EQ(std::abs(c.readout_sign), 1);
  EXPECT_EQ(std::abs(c.gate_phase_sign), 1);
  auto r = circuit_sim(xy_process(), xy_obs(), {kPi / 2, 0}, CharKind::right);
  EXPECT_LT(std::abs(r.exact), 1e-10);
  EXPECT_EQ(r.readout_sign, c.readout_sign);
}

TEST(CircuitSim, MatchesCharFnUnitaryAndDilated) {
  rnd::Rng rng(77);
  std::vector<MultiTimeProcess> ps{
      rnd::random_process({2, 2, 2}, rng, rnd::ChannelFamily::unitary),
      MultiTimeProcess(rnd::random_density(2, rng), {dephasing(0.3)}),
      rnd::random_process({2, 2}, rng, rnd::ChannelFamily::kraus)};
  for (const auto& p : ps) {
    auto o = random_obs(p.dims(), rng);
    for (auto k : {CharKind::right, CharKind::left, CharKind::doubled}) {
      std::size_t r = k == CharKind::doubled ? 2 * p.times() : p.times();
      for (int t = 0; t < 5; ++t) {
        auto pt = random_point(r, rng);
        auto c = circuit_sim(p, o, pt, k);
        EXPECT_LT(std::abs(c.exact - char_value(p, o, pt, k)), 1e-8) << to_string(k);
      }
    }
  }
}

TEST(CircuitSim, ShotsWithinFiveSigmaAndDeterministic) {
  rnd::Rng rng(78);
  MultiTimeProcess p(rnd::random_density(2, rng), {dephasing(0.2)});
  auto o = random_obs(p.dims(), rng);
  CircuitOptions opt{1000000, 2026};
  auto pt = random_point(2, rng);
  auto a = circuit_sim(p, o, pt, CharKind::right, opt);
  auto b = circuit_sim(p, o, pt, CharKind::right, opt);
  ASSERT_TRUE(a.estimate.has_value());
  EXPECT_EQ(*a.estimate, *b.estimate);
  EXPECT_EQ(a.shots_x + a.shots_y, 1000000u);
  EXPECT_LT(std::abs(a.estimate->real() - a.exact.real()), 5 * a.se_re);
  EXPECT_LT(std::abs(a.estimate->imag() - a.exact.imag()), 5 * a.se_im);
}

TEST(CircuitSim, RejectsRectangularChain) {
  rnd::Rng rng(79);
  auto p = rnd::random_process({2, 3}, rng);
  auto o = random_obs(p.dims(), rng);
  EXPECT_THROW(circuit_sim(p, o, {0.1, 0.2}, CharKind::right), DimensionError);
}

}  // namespace
}  // namespace tkd
