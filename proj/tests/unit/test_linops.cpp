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

#include "fixtures.hpp"

namespace tkd {
namespace {

using testing::kI;

TEST(Kron, IdentityFactorLeft) {
  auto k = kron(ComplexMatrix::identity(2), pauli::Z());
  EXPECT_TRUE(k.approx_equal(ComplexMatrix::diagonal({1.0, -1.0, 1.0, -1.0}), 0.0));
}

TEST(Kron, IdentityFactorRight) {
  auto k = kron(pauli::Z(), ComplexMatrix::identity(2));
  EXPECT_TRUE(k.approx_equal(ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0}), 0.0));
}

TEST(Kron, BitFlipPairIsAntiDiagonal) {
  auto k = kron(pauli::X(), pauli::X());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(k(i, j), cplx(i + j == 3 ? 1.0 : 0.0, 0.0));
}

TEST(Kron, TraceIsMultiplicative) {
  rnd::Rng rng(7);
  std::uniform_real_distribution<double> r(0.0, 1.0), th(0.0, 6.283185307179586);
  for (int trial = 0; trial < 50; ++trial) {
    auto rand_mat = [&](std::size_t n) {
      ComplexMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = std::polar(r(rng), th(rng));
      return m;
    };
    auto a = rand_mat(1 + trial % 4);
    auto b = rand_mat(1 + (trial / 4) % 4);
    EXPECT_LT(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-12);
  }
}

ComplexMatrix swap4() {
  ComplexMatrix s(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) s(i * 2 + j, j * 2 + i) = 1.0;
  return s;
}

TEST(PartialTrace, SwapReducesToIdentity) {
  auto r = partial_trace(swap4(), DimProfile{{2, 2}}, {0});
  EXPECT_TRUE(r.approx_equal(ComplexMatrix::identity(2), 1e-15));
}

TEST(PartialTrace, ProductStateFactorizes) {
  rnd::Rng rng(3);
  for (std::size_t d : {2u, 3u}) {
    auto rho = rnd::random_density(d, rng).matrix();
    auto sig = 0.7 * rnd::random_density(d, rng).matrix();
    auto r = partial_trace(kron(rho, sig), DimProfile{{d, d}}, {0});
    EXPECT_LT(max_abs_diff(r, sig.trace() * rho), 1e-14);
  }
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
  const double s = 1.0 / std::sqrt(2.0);
  auto bell = projector({s, 0.0, 0.0, s});
  auto r = partial_trace(bell, DimProfile{{2, 2}}, {1});
  EXPECT_TRUE(r.approx_equal(0.5 * ComplexMatrix::identity(2), 1e-15));
}

TEST(PartialTrace, KeepsRelativeOrderOfThreeFactors) {
  rnd::Rng rng(11);
  auto a = rnd::random_density(2, rng).matrix();
  auto b = rnd::random_density(3, rng).matrix();
  auto c = rnd::random_density(2, rng).matrix();
  auto abc = kron_all({a, b, c});
  DimProfile prof{{2, 3, 2}};
  EXPECT_LT(max_abs_diff(partial_trace(abc, prof, {0, 2}), kron(a, c)), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(abc, prof, {2, 0}), kron(a, c)), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(abc, prof, {1}), b), 1e-14);
}

TEST(PartialTrace, TracingEverythingGivesScalarTrace) {
  rnd::Rng rng(5);
  ComplexMatrix m(12, 12);
  std::normal_distribution<double> n;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) m(i, j) = cplx(n(rng), n(rng));
  auto r = partial_trace(m, DimProfile{{2, 3, 2}}, {});
  ASSERT_EQ(r.rows(), 1u);
  EXPECT_LT(std::abs(r(0, 0) - m.trace()), 1e-12);
}

TEST(PartialTrace, Errors) {
  EXPECT_THROW(partial_trace(swap4(), DimProfile{{2, 3}}, {0}), DimensionError);
  EXPECT_THROW(partial_trace(swap4(), DimProfile{{2, 2}}, {2}), DimensionError);
}

TEST(HermitianEig, DiagonalDegenerate) {
  auto g = hermitian_eig(ComplexMatrix::diagonal({1.0, 1.0, -1.0}));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(g[0].value, 1.0, 1e-14);
  EXPECT_EQ(g[0].vectors.size(), 2u);
  EXPECT_NEAR(g[1].value, -1.0, 1e-14);
  EXPECT_EQ(g[1].vectors.size(), 1u);
}

TEST(HermitianEig, BitFlip) {
  auto g = hermitian_eig(pauli::X());
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(g[0].value, 1.0, 1e-14);
  EXPECT_NEAR(g[1].value, -1.0, 1e-14);
  auto plus = ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  auto minus = ComplexMatrix::from_rows({{0.5, -0.5}, {-0.5, 0.5}});
  EXPECT_LT(max_abs_diff(g[0].projector(2), plus), 1e-14);
  EXPECT_LT(max_abs_diff(g[1].projector(2), minus), 1e-14);
}

TEST(HermitianEig, ZeroMatrixSingleGroup) {
  auto g = hermitian_eig(ComplexMatrix::zeros(3, 3));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].vectors.size(), 3u);
  EXPECT_NEAR(g[0].value, 0.0, 1e-15);
}

TEST(HermitianEig, ReconstructsRandomHermitian) {
  rnd::Rng rng(17);
  for (std::size_t d = 1; d <= 6; ++d) {
    auto h = rnd::random_hermitian(d, rng);
    ComplexMatrix sum(d, d);
    for (const auto& g : hermitian_eig(h)) sum += g.value * g.projector(d);
    EXPECT_LT(max_abs_diff(sum, h), 1e-10);
  }
}

TEST(HermitianEig, MergesNearlyDegenerateValues) {
  auto g = hermitian_eig(ComplexMatrix::diagonal({1.0, 1.0 + 1e-10, 2.0}));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[1].vectors.size(), 2u);
}

TEST(HermitianEig, RejectsNonHermitian) {
  auto m = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  EXPECT_THROW(hermitian_eig(m), ValidationError);
}

TEST(HermitianPhase, MatchesClosedForm) {
  const double u = 0.73;
  auto e = hermitian_phase(pauli::Z(), u, -1);
  EXPECT_LT(std::abs(e(0, 0) - std::polar(1.0, -u)), 1e-14);
  EXPECT_LT(std::abs(e(1, 1) - std::polar(1.0, u)), 1e-14);
  auto x = hermitian_phase(pauli::X(), u, +1);
  auto want = std::cos(u) * ComplexMatrix::identity(2) + (kI * std::sin(u)) * pauli::X();
  EXPECT_LT(max_abs_diff(x, want), 1e-14);
  EXPECT_TRUE(hermitian_phase(pauli::Y(), 0.0, 1).approx_equal(ComplexMatrix::identity(2), 0.0));
}

TEST(Norms, SpectralAndCondition) {
  EXPECT_NEAR(spectral_norm(ComplexMatrix::diagonal({3.0, -5.0})), 5.0, 1e-12);
  EXPECT_NEAR(condition_number(ComplexMatrix::diagonal({2.0, 0.5})), 4.0, 1e-12);
  auto inv = inverse(ComplexMatrix::diagonal({2.0, kI}));
  EXPECT_LT(max_abs_diff(inv, ComplexMatrix::diagonal({0.5, -kI})), 1e-15);
  EXPECT_THROW(inverse(ComplexMatrix::zeros(2, 2)), ValidationError);
}

TEST(ComplexMatrix, ShapeChecks) {
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cplx>(3)), DimensionError);
  EXPECT_THROW(ComplexMatrix::identity(2) * ComplexMatrix::identity(3), DimensionError);
  EXPECT_FALSE(ComplexMatrix::identity(2).approx_equal(ComplexMatrix::identity(3), 1.0));
}

}  // namespace
}  // namespace tkd
