// Copyright 2026 The qts Authors
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

#include "qts/operators.hpp"

namespace {

using qts::Complex;
using qts::DensityMatrix;
using qts::Operator;
using qts::SpinSystem;
using std::numbers::pi;

const Complex kI(0.0, 1.0);

TEST(Spin, AlgebraAndCasimirUpToTwentySpin) {
  for (int two_l = 0; two_l <= 40; ++two_l) {
    const SpinSystem sys(two_l);
    const auto l = qts::angular_momentum(sys);
    const double tol = 1e-12 * std::max(1.0, sys.l() * sys.l());
    EXPECT_LT(qts::max_abs_diff(qts::commutator(l.x, l.y), kI * l.z), tol) << two_l;
    EXPECT_LT(qts::max_abs_diff(qts::commutator(l.y, l.z), kI * l.x), tol) << two_l;
    EXPECT_LT(qts::max_abs_diff(qts::commutator(l.z, l.x), kI * l.y), tol) << two_l;
    EXPECT_LT(qts::max_abs_diff(l.casimir(), sys.l() * (sys.l() + 1.0) * Operator::identity(sys.dim())), tol);
    EXPECT_TRUE(l.x.is_hermitian() && l.y.is_hermitian() && l.z.is_hermitian());
  }
}

TEST(Spin, BasisOrderIsDescendingProjection) {
  const SpinSystem sys(4);
  EXPECT_EQ(sys.index_of(4), 0u);
  EXPECT_EQ(sys.index_of(-4), 4u);
  EXPECT_THROW(sys.index_of(3), qts::InvalidArgument);
  EXPECT_THROW(sys.index_of(6), qts::InvalidArgument);
  EXPECT_THROW(SpinSystem(-1), qts::InvalidArgument);
  const auto lz = qts::angular_momentum(sys).z;
  EXPECT_EQ(lz(0, 0), Complex(2.0, 0.0));
  EXPECT_EQ(lz(4, 4), Complex(-2.0, 0.0));
}

TEST(Spin, PauliConvention) {
  const auto p = qts::pauli();
  EXPECT_EQ(p.z(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(p.z(1, 1), Complex(-1.0, 0.0));
  EXPECT_NEAR(qts::expect(p.z, qts::qubit_ground()).real(), -1.0, 1e-15);
  EXPECT_NEAR(qts::expect(p.z, qts::qubit_excited()).real(), 1.0, 1e-15);
  EXPECT_LT(qts::max_abs_diff(p.x * p.y, kI * p.z), 1e-15);
}

TEST(Rotation, FullTurnIsPlusOrMinusIdentity) {
  for (int two_l = 0; two_l <= 12; ++two_l) {
    const SpinSystem sys(two_l);
    const double sign = two_l % 2 == 0 ? 1.0 : -1.0;
    for (auto axis : {std::array<double, 3>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.6, 0.0, 0.8}}) {
      const Operator r = qts::rotation(sys, axis, 2.0 * pi);
      EXPECT_LT(qts::max_abs_diff(r, sign * Operator::identity(sys.dim())), 1e-10) << two_l;
    }
  }
}

TEST(Rotation, ZeroAngleAndBadAxis) {
  const SpinSystem sys(3);
  EXPECT_EQ(qts::max_abs_diff(qts::rotation(sys, {0, 1, 0}, 0.0), Operator::identity(4)), 0.0);
  EXPECT_THROW(qts::rotation(sys, {0, 2, 0}, 1.0), qts::InvalidArgument);
}

TEST(Rotation, StretchedStatePointsAlongRotatedAxis) {
  for (int two_l : {1, 2, 5, 20}) {
    const SpinSystem sys(two_l);
    const auto l = qts::angular_momentum(sys);
    const double lv = sys.l();
    const auto minus_x = DensityMatrix::pure(qts::rotated_spin_state(sys, two_l, 3.0 * pi / 2.0));
    EXPECT_NEAR(qts::expect(l.x, minus_x).real(), -lv, 1e-12 * lv);
    EXPECT_NEAR(qts::expect(l.z, minus_x).real(), 0.0, 1e-12 * lv);
    const auto tilted = DensityMatrix::pure(qts::rotated_spin_state(sys, two_l, pi / 4.0));
    EXPECT_NEAR(qts::expect(l.z, tilted).real(), lv * std::cos(pi / 4.0), 1e-12 * lv);
    EXPECT_NEAR(qts::expect(l.x, tilted).real(), lv * std::sin(pi / 4.0), 1e-12 * lv);
    EXPECT_NEAR(qts::expect(l.y, tilted).real(), 0.0, 1e-12 * lv);
  }
}

TEST(SpinOrbit, SpectrumAndProjectors) {
  for (int two_l = 1; two_l <= 30; ++two_l) {
    const SpinSystem sys(two_l);
    const double l = sys.l();
    const auto ls = qts::ls_coupling(sys);
    const std::size_t n = 2 * sys.dim();
    const Operator id = Operator::identity(ls.l_dot_s.layout());
    EXPECT_EQ(ls.l_dot_s.layout(), (qts::SubsystemLayout{sys.dim(), 2}));

    const auto es = qts::eigh(ls.l_dot_s);
    for (std::size_t i = 0; i < n; ++i) {
      const double expected = i < static_cast<std::size_t>(two_l) ? -(l + 1.0) / 2.0 : l / 2.0;
      EXPECT_NEAR(es.values(static_cast<Eigen::Index>(i)), expected, 1e-12 * (l + 1)) << two_l << " " << i;
    }

    // Algebraic form of the upper projector, independent of the CG tables.
    const Operator pp_alg = (1.0 / (l + 0.5)) * (ls.l_dot_s + 0.5 * (l + 1.0) * id);
    EXPECT_LT(qts::max_abs_diff(ls.pi_plus, pp_alg), 1e-12 * (l + 1));
    EXPECT_LT(qts::max_abs_diff(ls.pi_plus + ls.pi_minus, id), 1e-12);
    EXPECT_LT(qts::max_abs_diff(ls.pi_plus * ls.pi_minus, Operator::zero(ls.l_dot_s.layout())), 1e-12);
    EXPECT_LT(qts::max_abs_diff(ls.pi_plus * ls.pi_plus, ls.pi_plus), 1e-12);
    EXPECT_NEAR(ls.pi_plus.trace().real(), two_l + 2.0, 1e-10);
    EXPECT_NEAR(ls.pi_minus.trace().real(), two_l, 1e-10);
    EXPECT_LT(qts::max_abs_diff(0.5 * l * ls.pi_plus - 0.5 * (l + 1.0) * ls.pi_minus, ls.l_dot_s), 1e-12 * (l + 1));
  }
}

TEST(SpinOrbit, SpinHalfReferenceMatchesHeisenbergForm) {
  const auto ls = qts::ls_coupling(SpinSystem(1));
  const auto p = qts::pauli();
  const Operator heis = 0.25 * (qts::kron(p.x, p.x) + qts::kron(p.y, p.y) + qts::kron(p.z, p.z));
  EXPECT_LT(qts::max_abs_diff(ls.l_dot_s, heis), 1e-15);
}

TEST(Boson, LadderAlgebraAndTruncationDefect) {
  const qts::BosonMode mode(7, 10.0);
  const auto b = qts::boson_ops(mode);
  const Operator ad = b.a.adjoint();
  EXPECT_LT(qts::max_abs_diff(ad * b.a, b.number), 1e-14);
  Operator expected = Operator::identity(7);
  qts::Matrix defect = qts::Matrix::Zero(7, 7);
  defect(6, 6) = 7.0;
  expected = expected - Operator(defect);
  EXPECT_LT(qts::max_abs_diff(qts::commutator(b.a, ad), expected), 1e-13);
  EXPECT_NEAR(std::abs(b.a(2, 3)), std::sqrt(3.0), 1e-15);
  EXPECT_THROW(qts::BosonMode(1, 1.0), qts::InvalidArgument);
}

TEST(InitialStates, DefaultsAndErrors) {
  const SpinSystem sys(4);
  const auto s = qts::initial_states(sys, 4, 0.0);
  EXPECT_NEAR(qts::expect(qts::angular_momentum(sys).z, s.rho0).real(), 2.0, 1e-14);
  EXPECT_NEAR(qts::expect(qts::pauli().z, s.chi0).real(), -1.0, 1e-15);
  EXPECT_THROW(qts::initial_states(sys, 5, 0.0), qts::InvalidArgument);
  EXPECT_THROW(qts::initial_states(sys, 6, 0.0), qts::InvalidArgument);
}

}  // namespace
