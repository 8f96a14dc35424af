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

#pragma once

// Reference (x) qubit (x) single truncated boson mode under the constant
// Hamiltonian sin(theta) Lz sigma_z + cos(theta) Ly + omega a^dagger a
// + alpha sigma_x (a + a^dagger), evolved exactly from one eigendecomposition.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "qts/errors.hpp"
#include "qts/operators.hpp"
#include "qts/protocols/config.hpp"
#include "qts/protocols/observe.hpp"
#include "qts/protocols/trajectory.hpp"
#include "qts/tensor.hpp"
#include "qts/thermo.hpp"

namespace qts {

inline constexpr std::size_t kMaxBosonicRecords = 4000;

struct BosonicResult {
  Trajectory trajectory;
  double max_top_level_population = 0.0;  // largest weight on Fock level D-1
};

// Joint Hamiltonian on the layout {2l+1, 2, D}.
inline Operator bosonic_hamiltonian(const ProtocolConfig& cfg) {
  if (!cfg.bath) throw InvalidArgument("bosonic_hamiltonian: bath parameters missing");
  const SpinSystem ref(cfg.two_l);
  const BosonMode mode(cfg.bath->dim, cfg.bath->omega);
  const SpinOperators l = angular_momentum(ref);
  const SpinOperators p = pauli();
  const BosonOperators b = boson_ops(mode);
  const Operator id_q = Operator::identity(kQubitDim), id_b = Operator::identity(mode.dim());
  const Operator id_r = Operator::identity(ref.dim());
  const double s = std::sin(cfg.theta), c = std::cos(cfg.theta);
  return s * kron(kron(l.z, p.z), id_b) + c * kron(kron(l.y, id_q), id_b) +
         mode.omega() * kron(kron(id_r, id_q), b.number) +
         cfg.bath->alpha * kron(kron(id_r, p.x), b.a + b.a.adjoint());
}

inline BosonicResult run_bosonic_detailed(const ProtocolConfig& cfg) {
  if (cfg.kind != ProtocolKind::Bosonic) throw InvalidArgument("run_bosonic: config kind is not bosonic");
  cfg.validate();
  const SpinSystem ref(cfg.two_l);
  const detail::Observer obs(ref);
  const auto d = static_cast<Eigen::Index>(ref.dim());
  const auto D = static_cast<Eigen::Index>(cfg.bath->dim);
  const Eigen::Index N = d * 2 * D;
  const double s = std::sin(cfg.theta), c = std::cos(cfg.theta);
  const double omega = cfg.bath->omega;

  // Reference after the free raising rotation with the qubit in |0>.
  const Operator h_r = c * obs.l.y - s * obs.l.z;
  Vector psi = propagator(h_r, std::numbers::pi / 2).matrix() * rotated_spin_state(ref, ref.two_l(), cfg.initial_angle());
  psi.normalize();

  RealVector p(D);
  for (Eigen::Index n = 0; n < D; ++n) p(n) = std::exp(-cfg.beta * omega * static_cast<double>(n));
  p /= p.sum();

  const EigenSystem es = eigh(bosonic_hamiltonian(cfg));
  const Matrix& v = es.vectors.matrix();

  // Columns of x0 are sqrt(p_n) psi (x) |0> (x) |n>; b0 holds them in the eigenbasis.
  Matrix x0 = Matrix::Zero(N, D);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index n = 0; n < D; ++n)
      x0(i * 2 * D + static_cast<Eigen::Index>(kQubitGround) * D + n, n) = std::sqrt(p(n)) * psi(i);
  const Matrix b0 = v.adjoint() * x0;

  const auto steps = static_cast<std::size_t>(std::floor(cfg.end_time() / cfg.dt + 1e-9));
  const std::size_t stride =
      std::max<std::size_t>(static_cast<std::size_t>(cfg.sample_stride), (steps + kMaxBosonicRecords - 1) / kMaxBosonicRecords);

  BosonicResult res;
  Trajectory& traj = res.trajectory;
  IterationSummary sum;
  Matrix x(N, D);
  for (std::size_t k = 0; k <= steps; k += stride) {
    const double t = static_cast<double>(k) * cfg.dt;
    const Vector phase = (es.values * Complex(0.0, -t)).array().exp().matrix();
    x.noalias() = v * (phase.asDiagonal() * b0);

    // Reference marginal: each column reshaped to (2D x d) blocks.
    Matrix rho = Matrix::Zero(d, d);
    Matrix chi = Matrix::Zero(2, 2);
    double top = 0.0;
    for (Eigen::Index n = 0; n < D; ++n) {
      const Eigen::Map<const Matrix> a(x.col(n).data(), 2 * D, d);
      rho.noalias() += a.transpose() * a.conjugate();
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index m = 0; m < D; ++m) {
          const Complex up = a(m, i), dn = a(D + m, i);
          chi(0, 0) += std::norm(up);
          chi(1, 1) += std::norm(dn);
          chi(0, 1) += up * std::conj(dn);
        }
      for (Eigen::Index i = 0; i < d; ++i) top += std::norm(a(D - 1, i)) + std::norm(a(2 * D - 1, i));
    }
    chi(1, 0) = std::conj(chi(0, 1));
    res.max_top_level_population = std::max(res.max_top_level_population, top);

    const DensityMatrix rho_ref = DensityMatrix::trusted(Operator(std::move(rho)).hermitized());
    const DensityMatrix rho_q = DensityMatrix::trusted(Operator(std::move(chi)).hermitized());
    const double sz = expect(obs.s.z, rho_q).real();
    const double e_ref = s * 2.0 * sz * expect(obs.l.z, rho_ref).real() + c * expect(obs.l.y, rho_ref).real();
    traj.records.push_back(obs(t, rho_ref, rho_q, e_ref, 0.0, 0.0, 1, k == 0 ? Phase::Initial : Phase::Lowering));
  }

  sum.iteration = 1;
  sum.t_start = 0.0;
  sum.t_end = traj.records.back().t;
  sum.e_ref_start = traj.records.front().e_ref;
  sum.e_ref_end = traj.records.back().e_ref;
  sum.s_ref_end = traj.records.back().s_ref;
  sum.delta_s_ref = sum.s_ref_end - traj.records.front().s_ref;
  traj.iterations.push_back(sum);
  return res;
}

inline Trajectory run_bosonic(const ProtocolConfig& cfg) { return run_bosonic_detailed(cfg).trajectory; }

}  // namespace qts
