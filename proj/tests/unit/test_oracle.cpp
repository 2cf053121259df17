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
using testing::max_diff;
using testing::meas;

TEST(OracleKd, XyTable) {
  auto q = oracle::oracle_kd(testing::xy_process(), testing::xy_schedule(), DistKind::kd_right);
  EXPECT_LT(std::abs(q.at({0, 0}) - (1.0 + kI) / 4.0), 1e-15);
  EXPECT_LT(std::abs(q.at({0, 1}) - (1.0 - kI) / 4.0), 1e-15);
  EXPECT_LT(std::abs(q.at({1, 0}) - (1.0 - kI) / 4.0), 1e-15);
  EXPECT_LT(std::abs(q.at({1, 1}) - (1.0 + kI) / 4.0), 1e-15);
}

TEST(OracleKd, CommutingDiagonalIsClassicalProduct) {
  auto rho = DensityOperator(ComplexMatrix::diagonal({0.7, 0.3}));
  MultiTimeProcess p(rho, {identity_channel(2)});
  auto z = meas(pauli::Z());
  auto q = oracle::oracle_kd(p, {z, z}, DistKind::kd_right);
  EXPECT_LT(std::abs(q.at({0, 0}) - 0.7), 1e-15);
  EXPECT_LT(std::abs(q.at({1, 1}) - 0.3), 1e-15);
  EXPECT_LT(std::abs(q.at({0, 1})), 1e-15);
  EXPECT_LT(std::abs(q.at({1, 0})), 1e-15);
}

TEST(OracleKd, AgreesWithProduction) {
  rnd::Rng rng(81);
  for (auto dims : {std::vector<std::size_t>{2, 2, 2, 2}, {3, 3, 3}, {3, 3}}) {
    for (auto fam : {rnd::ChannelFamily::unitary, rnd::ChannelFamily::kraus,
                     rnd::ChannelFamily::mixed}) {
      auto p = rnd::random_process(dims, rng, fam);
      auto s = rnd::random_schedule(dims, rng);
      auto s2 = rnd::random_schedule(dims, rng);
      EXPECT_LT(max_diff(oracle::oracle_kd(p, s, DistKind::kd_right).values(),
                         kd_right(p, s).values()), 1e-12);
      EXPECT_LT(max_diff(oracle::oracle_kd(p, s, DistKind::kd_left).values(),
                         kd_left(p, s).values()), 1e-12);
      EXPECT_LT(max_diff(oracle::oracle_kd(p, s, DistKind::mh).values(), mh(p, s).values()),
                1e-12);
      EXPECT_LT(max_diff(oracle::oracle_kd(p, s, DistKind::lvn).values(), lvn(p, s).values()),
                1e-12);
      if (dims.size() <= 3) {
        EXPECT_LT(max_diff(oracle::oracle_kd_doubled(p, s, s2).values(),
                           kd_doubled(p, s, s2).values()), 1e-12);
      }
    }
  }
}

TEST(OracleState, ClosedForms) {
  rnd::Rng rng(82);
  auto rho = rnd::random_density(3, rng);
  auto y0 = oracle::oracle_state(MultiTimeProcess(rho, {}), StateKind::kd_right);
  EXPECT_LT(max_abs_diff(y0.matrix, rho.matrix()), 1e-14);

  auto r2 = rnd::random_density(2, rng);
  auto y1 = oracle::oracle_state(MultiTimeProcess(r2, {identity_channel(2)}), StateKind::kd_right);
  ComplexMatrix sw(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) sw(i * 2 + j, j * 2 + i) = 1.0;
  EXPECT_LT(max_abs_diff(y1.matrix, sw * kron(ComplexMatrix::identity(2), r2.matrix())), 1e-14);

  auto y2 = oracle::oracle_state(
      MultiTimeProcess(DensityOperator::maximally_mixed(2), {identity_channel(2)}),
      StateKind::pdo);
  EXPECT_LT(max_abs_diff(y2.matrix, 0.5 * sw), 1e-14);
}

TEST(OracleState, AgreesWithProduction) {
  rnd::Rng rng(83);
  for (auto dims : {std::vector<std::size_t>{2, 2, 2}, {3, 3}, {2, 2, 2, 2}}) {
    auto p = rnd::random_process(dims, rng, rnd::ChannelFamily::mixed);
    auto right = kd_state_recursive(p);
    EXPECT_LT(max_abs_diff(oracle::oracle_state(p, StateKind::kd_right).matrix, right.matrix),
              1e-10);
    EXPECT_LT(max_abs_diff(oracle::oracle_state(p, StateKind::kd_left).matrix,
                           kd_state_recursive(p, StateKind::kd_left).matrix), 1e-10);
    EXPECT_LT(max_abs_diff(oracle::oracle_state(p, StateKind::mh).matrix,
                           mh_state(right).matrix), 1e-10);
    EXPECT_LT(max_abs_diff(oracle::oracle_state(p, StateKind::pdo).matrix, pdo(p).matrix),
              1e-10);
  }
  auto p = rnd::random_process({2, 2}, rng);
  auto b = default_bases(p);
  auto dbl = reconstruct_state(correlators(p, b, CorrelatorKind::doubled), b);
  EXPECT_LT(max_abs_diff(oracle::oracle_state(p, StateKind::kd_doubled).matrix, dbl.matrix),
            1e-10);
}

}  // namespace
}  // namespace tkd
