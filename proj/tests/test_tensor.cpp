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
#include <random>

#include "oracles.hpp"
#include "qts/operators.hpp"
#include "qts/tensor.hpp"

namespace {

using qts::Complex;
using qts::DensityMatrix;
using qts::Matrix;
using qts::Operator;
using qts::SubsystemLayout;
using std::numbers::pi;

Operator diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return Operator(m);
}

TEST(Layout, RejectsEmptyAndZeroDims) {
  EXPECT_THROW(SubsystemLayout(std::vector<std::size_t>{}), qts::InvalidArgument);
  EXPECT_THROW((SubsystemLayout{3, 0}), qts::InvalidArgument);
  const SubsystemLayout a{3, 2};
  EXPECT_EQ(a.total(), 6u);
  EXPECT_EQ(a.concat(SubsystemLayout{4}), (SubsystemLayout{3, 2, 4}));
}

TEST(OperatorType, LayoutMustMatchDimension) {
  EXPECT_THROW(Operator(Matrix::Identity(6, 6), SubsystemLayout{4, 2}), qts::InvalidArgument);
  EXPECT_THROW(Operator(Matrix::Identity(2, 3)), qts::InvalidArgument);
  const Operator a = Operator::identity(SubsystemLayout{3, 2});
  const Operator b = Operator::identity(6);
  EXPECT_THROW(a + b, qts::InvalidArgument);
}

TEST(Kron, IdentityAndConventionCases) {
  EXPECT_EQ(qts::max_abs_diff(qts::kron(Operator::identity(2), Operator::identity(3)), Operator::identity(6)), 0.0);
  const auto sz = qts::pauli().z;
  EXPECT_EQ(qts::max_abs_diff(qts::kron(sz, Operator::identity(2)), diag({1, 1, -1, -1})), 0.0);
}

TEST(Kron, SpinOneTimesSigmaZDiagonal) {
  const auto lz = qts::angular_momentum(qts::SpinSystem(2)).z;
  const Operator k = qts::kron(lz, qts::pauli().z);
  const double expected[] = {1, -1, 0, 0, -1, 1};
  for (int i = 0; i < 6; ++i) EXPECT_EQ(k(i, i), Complex(expected[i], 0.0));
  EXPECT_EQ(k.layout(), (SubsystemLayout{3, 2}));
  EXPECT_LT(qts::max_abs_diff(k, diag({1, -1, 0, 0, -1, 1})), 1e-15);
}

TEST(Kron, MatchesIndexFormulaAndIsAssociative) {
  std::mt19937_64 rng(1);
  const Matrix a = oracle::random_complex(3, rng), b = oracle::random_complex(2, rng), c = oracle::random_complex(3, rng);
  const Operator A(a), B(b), C(c);
  EXPECT_LT((qts::kron(A, B).matrix() - oracle::kron(a, b)).cwiseAbs().maxCoeff(), 1e-15);
  const Operator left = qts::kron(qts::kron(A, B), C), right = qts::kron(A, qts::kron(B, C));
  EXPECT_LT((left.matrix() - right.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(left.layout(), right.layout());
}

TEST(PartialTrace, FactorizedCase) {
  std::mt19937_64 rng(2);
  const Operator a(oracle::random_complex(3, rng)), b(oracle::random_complex(2, rng));
  const Operator r = qts::partial_trace(qts::kron(a, b), 0);
  EXPECT_LT(qts::max_abs_diff(r, b.trace() * a), 1e-13);
  const Operator r2 = qts::partial_trace(qts::kron(a, b), 1);
  EXPECT_LT(qts::max_abs_diff(r2, a.trace() * b), 1e-13);
}

TEST(PartialTrace, BellStateMarginalsAreMaximallyMixed) {
  qts::Vector psi = qts::Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  const auto bell = DensityMatrix::pure(psi, SubsystemLayout{2, 2});
  const Operator half = Operator::identity(2) * 0.5;
  EXPECT_LT(qts::max_abs_diff(qts::partial_trace(bell, 0).op(), half), 1e-15);
  EXPECT_LT(qts::max_abs_diff(qts::partial_trace(bell, 1).op(), half), 1e-15);
}

TEST(PartialTrace, ReducedCouplingOnStretchedState) {
  const qts::SpinSystem ref(2);
  const auto l = qts::angular_momentum(ref);
  const auto sz = qts::pauli().z;
  const auto rho0 = DensityMatrix::pure(qts::spin_state(ref, 2));
  const Operator m = qts::kron(rho0.op(), Operator::identity(2)) * qts::kron(l.z, sz);
  EXPECT_LT(qts::max_abs_diff(qts::partial_trace(m, 1), sz), 1e-15);
}

TEST(PartialTrace, Errors) {
  const Operator m = Operator::identity(SubsystemLayout{3, 2});
  EXPECT_THROW(qts::partial_trace(m, std::vector<std::size_t>{}), qts::InvalidArgument);
  EXPECT_THROW(qts::partial_trace(m, std::vector<std::size_t>{0, 1}), qts::InvalidArgument);
  EXPECT_THROW(qts::partial_trace(m, 2), qts::InvalidArgument);
  EXPECT_THROW(qts::partial_trace(Operator::identity(6), 0), qts::InvalidArgument);
}

TEST(PartialTrace, AgreesWithBasisSumOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = oracle::random_complex(12, rng);
    const Operator op(m, SubsystemLayout{4, 3});
    EXPECT_LT((qts::partial_trace(op, 0).matrix() - oracle::trace_second(m, 4, 3)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((qts::partial_trace(op, 1).matrix() - oracle::trace_first(m, 4, 3)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PartialTrace, TracePreservingLinearAndComposable) {
  std::mt19937_64 rng(4);
  const SubsystemLayout layout{3, 2, 3};
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a(oracle::random_complex(18, rng), layout), b(oracle::random_complex(18, rng), layout);
    const Complex alpha(0.3, -1.1);
    for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
      const Operator ra = qts::partial_trace(a, keep);
      EXPECT_LT(std::abs(ra.trace() - a.trace()), 1e-12);
      const Operator lin = qts::partial_trace(a + alpha * b, keep);
      EXPECT_LT(qts::max_abs_diff(lin, ra + alpha * qts::partial_trace(b, keep)), 1e-12);
    }
    // Two single-factor traces equal one joint trace.
    EXPECT_LT(qts::max_abs_diff(qts::partial_trace(qts::partial_trace(a, {0, 1}), 0), qts::partial_trace(a, 0)), 1e-12);
    EXPECT_LT(qts::max_abs_diff(qts::partial_trace(qts::partial_trace(a, {1, 2}), 1), qts::partial_trace(a, 2)), 1e-12);
    EXPECT_LT(qts::max_abs_diff(qts::partial_trace(qts::partial_trace(a, {0, 2}), 1), qts::partial_trace(a, 2)), 1e-12);
    EXPECT_EQ(qts::partial_trace(a, {2, 0}).layout(), (SubsystemLayout{3, 3}));
  }
}

TEST(Eigh, PauliCases) {
  const auto p = qts::pauli();
  const auto ez = qts::eigh(p.z);
  EXPECT_DOUBLE_EQ(ez.values(0), -1.0);
  EXPECT_DOUBLE_EQ(ez.values(1), 1.0);
  EXPECT_NEAR(std::abs(ez.vectors(1, 0)), 1.0, 1e-15);  // sigma_z = -1 is basis vector 1
  EXPECT_NEAR(std::abs(ez.vectors(0, 1)), 1.0, 1e-15);
  const auto ex = qts::eigh(p.x);
  EXPECT_NEAR(ex.values(0), -1.0, 1e-15);
  EXPECT_NEAR(ex.values(1), 1.0, 1e-15);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(ex.vectors(i, j)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Eigh, SpinOrbitSpectrumForSpinOne) {
  const auto es = qts::eigh(qts::ls_coupling(qts::SpinSystem(2)).l_dot_s);
  const double expected[] = {-1, -1, 0.5, 0.5, 0.5, 0.5};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(es.values(i), expected[i], 1e-14);
}

TEST(Eigh, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(qts::eigh(Operator(m)), qts::InvalidArgument);
}

TEST(Eigh, ReconstructionAndUnitarity) {
  std::mt19937_64 rng(5);
  for (Eigen::Index n : {1, 2, 5, 17, 64}) {
    const Operator h(oracle::random_hermitian(n, rng));
    const auto es = qts::eigh(h);
    const Matrix& v = es.vectors.matrix();
    const Matrix rec = v * es.values.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LT((rec - h.matrix()).cwiseAbs().maxCoeff(), 1e-10 * static_cast<double>(n));
    EXPECT_LT((v.adjoint() * v - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(es.values(i - 1), es.values(i));
  }
}

TEST(Propagator, ZeroDurationIsExactIdentity) {
  std::mt19937_64 rng(6);
  const Operator h(oracle::random_hermitian(9, rng));
  EXPECT_LE(qts::max_abs_diff(qts::propagator(h, 0.0), Operator::identity(9)), 1e-14);
}

TEST(Propagator, KnownPhases) {
  const Operator u = qts::propagator(qts::pauli().z, pi);
  EXPECT_LT(qts::max_abs_diff(u, -1.0 * Operator::identity(2)), 1e-15);

  const qts::SpinSystem half(1);
  const Operator ly = qts::angular_momentum(half).y;
  const qts::Vector out = qts::propagator(ly, pi).matrix() * qts::spin_state(half, 1);
  EXPECT_NEAR(std::abs(out.dot(qts::spin_state(half, -1))), 1.0, 1e-15);
}

TEST(Propagator, MatchesTaylorOracleAndGroupLaw) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  for (Eigen::Index n : {2, 3, 6, 11}) {
    const Matrix h = oracle::random_hermitian(n, rng);
    const Operator H(h);
    const double s1 = time(rng), s2 = time(rng);
    const Operator u = qts::propagator(H, s1);
    EXPECT_LT((u.matrix() - oracle::expm(Complex(0.0, -s1) * h)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((u.matrix().adjoint() * u.matrix() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(qts::max_abs_diff(u * qts::propagator(H, s2), qts::propagator(H, s1 + s2)), 1e-9);
  }
}

TEST(Expect, ReferenceValues) {
  EXPECT_NEAR(qts::expect(qts::pauli().z, qts::qubit_ground()).real(), -1.0, 1e-15);
  const qts::SpinSystem two(4);
  const auto l = qts::angular_momentum(two);
  EXPECT_NEAR(std::abs(qts::expect(l.z, DensityMatrix::maximally_mixed(SubsystemLayout{5}))), 0.0, 1e-15);
  EXPECT_NEAR(qts::expect(l.z, DensityMatrix::pure(qts::spin_state(two, -2))).real(), -1.0, 1e-15);
  EXPECT_THROW(qts::expect(l.z, qts::qubit_ground()), qts::InvalidArgument);
}

TEST(Expect, HermitianObservablesHaveRealExpectation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator obs(oracle::random_hermitian(7, rng));
    const DensityMatrix rho(Operator(oracle::random_state(7, rng)));
    const Complex v = qts::expect(obs, rho);
    EXPECT_LE(std::abs(v.imag()), 1e-10);
    EXPECT_NEAR(v.real(), (rho.matrix() * obs.matrix()).trace().real(), 1e-12);
  }
}

TEST(DensityMatrixType, ValidationRejectsBadStates) {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  m(0, 1) = 0.1;  // not Hermitian
  EXPECT_THROW(DensityMatrix{Operator(m)}, qts::InvalidArgument);
  EXPECT_THROW(DensityMatrix{Operator(Matrix(Matrix::Identity(2, 2)))}, qts::InvalidArgument);  // trace 2
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{Operator(neg)}, qts::InvalidArgument);
  EXPECT_NO_THROW(DensityMatrix{Operator(Matrix(Matrix::Identity(2, 2) * 0.5))});
}

TEST(DensityMatrixType, UnitaryConjugationPreservesInvariants) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho(Operator(oracle::random_state(6, rng)));
    const Operator u = qts::propagator(Operator(oracle::random_hermitian(6, rng)), 2.5);
    const DensityMatrix out = rho.evolved(u);
    EXPECT_LE(out.op().hermiticity_error(), 1e-12);
    EXPECT_NEAR(out.op().trace().real(), 1.0, 1e-12);
    EXPECT_NO_THROW(DensityMatrix{out.op()});
  }
}

TEST(DensityMatrixType, SparseAndDenseConjugationAgree) {
  std::mt19937_64 rng(17);
  const DensityMatrix rho(Operator(oracle::random_state(10, rng)));
  const Operator u = qts::propagator(Operator(oracle::random_hermitian(10, rng)), 0.7);
  const qts::SparseMatrix us = u.matrix().sparseView();
  EXPECT_LT(qts::max_abs_diff(rho.evolved(us).op(), rho.evolved(u).op()), 1e-13);
  EXPECT_THROW(rho.evolved(qts::SparseMatrix(3, 3)), qts::InvalidArgument);
}

}  // namespace
