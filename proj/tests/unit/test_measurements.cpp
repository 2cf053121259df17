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

TEST(SpectralMeasurement, Pauli) {
  auto z = spectral_measurement(pauli::Z());
  ASSERT_EQ(z.size(), 2u);
  EXPECT_EQ(z[0].value, 1.0);
  EXPECT_TRUE(z[0].projector.approx_equal(ComplexMatrix::diagonal({1.0, 0.0}), 1e-15));
  EXPECT_TRUE(z[1].projector.approx_equal(ComplexMatrix::diagonal({0.0, 1.0}), 1e-15));

  auto id = spectral_measurement(ComplexMatrix::identity(2));
  ASSERT_EQ(id.size(), 1u);
  EXPECT_NEAR(id[0].value, 1.0, 1e-15);
  EXPECT_TRUE(id[0].projector.approx_equal(ComplexMatrix::identity(2), 1e-15));

  auto x = spectral_measurement(pauli::X());
  EXPECT_TRUE(x[0].projector.approx_equal(testing::plus_state().matrix(), 1e-14));
  EXPECT_TRUE(x[1].projector.approx_equal(testing::minus_state().matrix(), 1e-14));
}

TEST(SpectralMeasurement, RandomHermitianCompleteAndOrthogonal) {
  rnd::Rng rng(21);
  for (std::size_t d = 1; d <= 6; ++d)
    for (int t = 0; t < 5; ++t) {
      auto h = rnd::random_hermitian(d, rng);
      auto m = spectral_measurement(h);
      ComplexMatrix sum(d, d);
      for (const auto& o : m.outcomes()) sum += o.projector;
      EXPECT_LT(max_abs_diff(sum, ComplexMatrix::identity(d)), 1e-9);
      for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = a + 1; b < m.size(); ++b)
          EXPECT_LT(max_abs(m[a].projector * m[b].projector), 1e-9);
      EXPECT_LT(max_abs_diff(m.observable(), h), 1e-7);
    }
}

TEST(SpectralMeasurement, RejectsNonHermitian) {
  auto m = ComplexMatrix::from_rows({{1.0, 2.0}, {0.0, 1.0}});
  EXPECT_THROW(spectral_measurement(m), ValidationError);
}

TEST(ProjectiveMeasurement, InvariantsEnforced) {
  auto p0 = ComplexMatrix::diagonal({1.0, 0.0});
  auto p1 = ComplexMatrix::diagonal({0.0, 1.0});
  EXPECT_THROW(measurement_from_projectors({1.0, 1.0}, {p0, p1}), ValidationError);
  EXPECT_THROW(measurement_from_projectors({1.0}, {p0}), ValidationError);
  EXPECT_THROW(measurement_from_projectors({1.0, 2.0}, {p0, 0.5 * ComplexMatrix::identity(2)}),
               ValidationError);
}

TEST(HSBasis, QubitIsPauli) {
  auto b = hs_basis(2);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_TRUE(b[0].approx_equal(pauli::I(), 0.0));
  EXPECT_TRUE(b[1].approx_equal(pauli::X(), 1e-15));
  EXPECT_TRUE(b[2].approx_equal(pauli::Y(), 1e-15));
  EXPECT_TRUE(b[3].approx_equal(pauli::Z(), 1e-15));
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu)
      EXPECT_NEAR(std::abs(trace_product(b[mu], b[nu]) - (mu == nu ? 2.0 : 0.0)), 0.0, 1e-15);
}

TEST(HSBasis, GramMatrixIsDTimesIdentity) {
  for (std::size_t d : {3u, 4u, 5u}) {
    auto b = hs_basis(d);
    ASSERT_EQ(b.size(), d * d);
    EXPECT_TRUE(b[0].approx_equal(ComplexMatrix::identity(d), 0.0));
    for (std::size_t mu = 0; mu < b.size(); ++mu) {
      if (mu) EXPECT_LT(std::abs(b[mu].trace()), 1e-12);
      for (std::size_t nu = 0; nu < b.size(); ++nu)
        EXPECT_LT(std::abs(trace_product(b[mu], b[nu]) - (mu == nu ? double(d) : 0.0)), 1e-12);
    }
  }
  EXPECT_THROW(hs_basis(1), DimensionError);
}

TEST(HSBasis, ExpandsRandomHermitian) {
  rnd::Rng rng(22);
  for (std::size_t d : {2u, 3u, 4u}) {
    auto b = hs_basis(d);
    auto h = rnd::random_hermitian(d, rng);
    ComplexMatrix sum(d, d);
    for (const auto& s : b.ops()) sum += (trace_product(h, s) / double(d)) * s;
    EXPECT_LT(max_abs_diff(sum, h), 1e-10);
  }
}

TEST(HSBasis, RejectsNonOrthogonalSet) {
  auto ops = hs_basis(2).ops();
  ops[2] = pauli::X();
  EXPECT_THROW(HSBasis{ops}, ValidationError);
}

TEST(ProductMeasurement, ComputationalBasis) {
  auto z = spectral_measurement(pauli::Z());
  auto zz = product_measurement({z, z});
  ASSERT_EQ(zz.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    ComplexMatrix want(4, 4);
    want(k, k) = 1.0;
    EXPECT_TRUE(zz[k].projector.approx_equal(want, 1e-15));
    EXPECT_EQ(zz[k].label.size(), 2u);
  }
  EXPECT_EQ(zz[1].label, (std::vector<double>{1.0, -1.0}));
  EXPECT_EQ(zz[1].value, -1.0);
}

TEST(ProductMeasurement, MixedSitesComplete) {
  auto zx = product_measurement({spectral_measurement(pauli::Z()), spectral_measurement(pauli::X())});
  ComplexMatrix sum(4, 4);
  for (const auto& o : zx.outcomes()) sum += o.projector;
  EXPECT_LT(max_abs_diff(sum, ComplexMatrix::identity(4)), 1e-14);
  EXPECT_LT(max_abs_diff(zx[0].projector,
                         kron(ComplexMatrix::diagonal({1.0, 0.0}), testing::plus_state().matrix())),
            1e-14);
}

TEST(ProductMeasurement, TrivialSiteUnchanged) {
  auto triv = spectral_measurement(ComplexMatrix::identity(2));
  auto p = product_measurement({triv});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_TRUE(p[0].projector.approx_equal(ComplexMatrix::identity(2), 1e-15));
  EXPECT_THROW(product_measurement({}), DimensionError);
}

}  // namespace
}  // namespace tkd
