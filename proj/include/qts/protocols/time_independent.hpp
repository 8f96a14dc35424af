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

// Time-independent protocol: H = g sin(theta) Lz (x) sigma_z + cos(theta) Ly (x) 1.
// A free rotation to t = pi/2 raises the qubit splitting; from there the
// qubit is thermalized after every dt step until <Lz> crosses zero.
//
// g = -1 on even iterations under IterationMethod::FlipCoupling.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "qts/errors.hpp"
#include "qts/operators.hpp"
#include "qts/protocols/config.hpp"
#include "qts/protocols/observe.hpp"
#include "qts/protocols/trajectory.hpp"
#include "qts/tensor.hpp"
#include "qts/thermo.hpp"

namespace qts {

// Block: H commutes with 1 (x) sigma_z and the thermalized qubit is diagonal,
// so the reference evolves as a two-term mixture of (2l+1)-dim rotations.
// Joint: the same dynamics on the full reference (x) qubit space.
enum class TiBackend { Block, Joint };

namespace detail {

inline constexpr double kRaiseTime = std::numbers::pi / 2;
inline constexpr double kMaxLoweringTime = 4.0 * std::numbers::pi;

struct TiModel {
  SpinSystem ref;
  Observer obs;
  double s, c;
  double beta;
  Operator sz;  // Pauli z

  explicit TiModel(const ProtocolConfig& cfg)
      : ref(cfg.two_l),
        obs(ref),
        s(std::sin(cfg.theta)),
        c(std::cos(cfg.theta)),
        beta(cfg.beta),
        sz(pauli().z) {}

  Operator joint(double g) const {
    return (g * s) * kron(obs.l.z, sz) + c * kron(obs.l.y, Operator::identity(kQubitDim));
  }
  // Reference generator when the qubit sits in the sigma_z = z eigenstate.
  Operator block(double g, double z) const { return (g * s * z) * obs.l.z + c * obs.l.y; }

  double lz(const DensityMatrix& rho) const { return expect(obs.l.z, rho).real(); }

  // tr[rho H_R] with H_R = g s <sigma_z> Lz + c Ly.
  double reference_energy(double g, const DensityMatrix& rho, const DensityMatrix& chi) const {
    return g * s * expect(sz, chi).real() * lz(rho) + c * expect(obs.l.y, rho).real();
  }
};

class TiBlockBackend {
 public:
  explicit TiBlockBackend(const TiModel& m, double dt) : m_(m), dt_(dt) {}

  void reset(const DensityMatrix& rho, std::size_t qubit_index, double g) {
    g_ = g;
    rho_ = rho;
    chi_ = DensityMatrix::pure(basis_vector(kQubitDim, qubit_index));
    const double z = qubit_index == kQubitExcited ? 1.0 : -1.0;
    raise_ = eigh(m_.block(g, z));
    step_up_ = propagator(m_.block(g, 1.0), dt_);
    step_down_ = propagator(m_.block(g, -1.0), dt_);
  }

  std::pair<DensityMatrix, DensityMatrix> state_at(double t) const { return {rho_.evolved(propagator(raise_, t)), chi_}; }
  void finish_raising() { rho_ = rho_.evolved(propagator(raise_, kRaiseTime)); }

  void thermalize() {
    // Diagonal levels g s <Lz> (+-1) + c <Ly> in the basis (up, down).
    const double half_gap = g_ * m_.s * m_.lz(rho_);
    const double shift = m_.c * expect(m_.obs.l.y, rho_).real();
    Matrix hq = Matrix::Zero(2, 2);
    hq(0, 0) = half_gap + shift;
    hq(1, 1) = -half_gap + shift;
    h_qubit_ = Operator(std::move(hq));
    const double x = -2.0 * m_.beta * std::abs(half_gap);
    const double p_low = 1.0 / (1.0 + std::exp(x));
    const double p_up = half_gap > 0.0 ? 1.0 - p_low : p_low;
    Eigen::Vector2d p(p_up, 1.0 - p_up);
    chi_ = DensityMatrix::diagonal(p, SubsystemLayout{kQubitDim});
  }

  void step() {
    const double p_up = chi_.matrix()(0, 0).real(), p_down = chi_.matrix()(1, 1).real();
    const Matrix& r = rho_.matrix();
    const Matrix& u = step_up_.matrix();
    const Matrix& d = step_down_.matrix();
    Matrix next = p_up * (u * r * u.adjoint()) + p_down * (d * r * d.adjoint());
    rho_ = DensityMatrix::trusted(Operator(std::move(next)).hermitized());
  }

  const DensityMatrix& reference() const { return rho_; }
  const DensityMatrix& qubit() const { return chi_; }
  const Operator& qubit_hamiltonian() const { return h_qubit_; }

 private:
  const TiModel& m_;
  double dt_;
  double g_ = 1.0;
  DensityMatrix rho_, chi_;
  EigenSystem raise_;
  Operator step_up_, step_down_, h_qubit_;
};

class TiJointBackend {
 public:
  explicit TiJointBackend(const TiModel& m, double dt) : m_(m), dt_(dt) {}

  void reset(const DensityMatrix& rho, std::size_t qubit_index, double g) {
    h_ = m_.joint(g);
    es_ = eigh(h_);
    step_ = propagator(es_, dt_);
    sigma_ = kron(rho, DensityMatrix::pure(basis_vector(kQubitDim, qubit_index)));
    split();
    h_qubit_ = reduced_hamiltonian(h_, rho_, 1);
  }

  std::pair<DensityMatrix, DensityMatrix> state_at(double t) const {
    const DensityMatrix s = sigma_.evolved(propagator(es_, t));
    return {partial_trace(s, 0), partial_trace(s, 1)};
  }
  void finish_raising() {
    sigma_ = sigma_.evolved(propagator(es_, kRaiseTime));
    split();
  }

  void thermalize() {
    QubitThermalization th = thermalize_qubit_parts(sigma_, h_, m_.beta);
    sigma_ = std::move(th.joint);
    rho_ = std::move(th.reference);
    chi_ = std::move(th.qubit);
    h_qubit_ = std::move(th.qubit_hamiltonian);
  }

  void step() {
    sigma_ = sigma_.evolved(step_);
    split();
  }

  const DensityMatrix& reference() const { return rho_; }
  const DensityMatrix& qubit() const { return chi_; }
  const Operator& qubit_hamiltonian() const { return h_qubit_; }

 private:
  void split() {
    rho_ = partial_trace(sigma_, 0);
    chi_ = partial_trace(sigma_, 1);
  }

  const TiModel& m_;
  double dt_;
  Operator h_, step_, h_qubit_;
  EigenSystem es_;
  DensityMatrix sigma_, rho_, chi_;
};

template <class Backend>
Trajectory run_time_independent_with(const ProtocolConfig& cfg) {
  const TiModel model(cfg);
  const double dt = cfg.dt;
  const auto stride = static_cast<std::size_t>(cfg.sample_stride);
  Backend backend(model, dt);
  Trajectory traj;
  DensityMatrix rho = initial_states(model.ref, model.ref.two_l(), cfg.initial_angle()).rho0;
  double t = 0.0, wq = 0.0;

  auto emit = [&](double time, const DensityMatrix& r, const DensityMatrix& q, double g, int it, Phase ph) {
    traj.records.push_back(model.obs(time, r, q, model.reference_energy(g, r, q), 0.0, wq, it, ph));
  };

  for (int it = 1; it <= cfg.iterations; ++it) {
    const bool even = it % 2 == 0;
    const double g = cfg.iteration_method == IterationMethod::FlipCoupling && even ? -1.0 : 1.0;
    const std::size_t q =
        cfg.iteration_method == IterationMethod::AlternateQubit && even ? kQubitExcited : kQubitGround;
    backend.reset(rho, q, g);

    IterationSummary sum;
    sum.iteration = it;
    sum.t_start = t;
    sum.e_ref_start = model.reference_energy(g, backend.reference(), backend.qubit());
    const double s_start = checked_entropy(rho, "reference");
    const double t_it = t;
    const double wq_start = wq;
    if (it == 1) emit(t, backend.reference(), backend.qubit(), g, it, Phase::Initial);

    for (std::size_t j = stride; static_cast<double>(j) * dt < kRaiseTime; j += stride) {
      const auto [r, chi] = backend.state_at(static_cast<double>(j) * dt);
      emit(t_it + static_cast<double>(j) * dt, r, chi, g, it, Phase::Raising);
    }
    backend.finish_raising();
    t = t_it + kRaiseTime;
    backend.thermalize();
    emit(t, backend.reference(), backend.qubit(), g, it, Phase::Lowering);

    const double lz0 = model.lz(backend.reference());
    const double tol = 1e-12 * std::max(1.0, model.ref.l());
    const double sgn = lz0 > tol ? 1.0 : (lz0 < -tol ? -1.0 : 0.0);
    DensityMatrix rho_end = backend.reference(), chi_end = backend.qubit();
    double t_end = t;
    if (sgn != 0.0) {
      for (std::size_t k = 1;; ++k) {
        const DensityMatrix rho_prev = backend.reference(), chi_prev = backend.qubit();
        const Operator h_prev = backend.qubit_hamiltonian();
        const double lz_prev = model.lz(rho_prev);
        backend.step();
        backend.thermalize();
        const double dws = -work_increment(chi_prev, h_prev, backend.qubit_hamiltonian());
        const double wq_prev = wq;
        wq += dws;
        const double t_prev = t;
        t = t_it + kRaiseTime + static_cast<double>(k) * dt;
        const double lz = model.lz(backend.reference());
        if (sgn * lz <= 0.0) {
          // Linear interpolation to the zero of <Lz>.
          const double a = lz_prev / (lz_prev - lz);
          rho_end = DensityMatrix::trusted(((1.0 - a) * rho_prev.op() + a * backend.reference().op()).hermitized());
          chi_end = DensityMatrix::trusted(((1.0 - a) * chi_prev.op() + a * backend.qubit().op()).hermitized());
          t_end = t_prev + a * dt;
          wq = wq_prev + a * dws;
          emit(t_end, rho_end, chi_end, g, it, Phase::Lowering);
          break;
        }
        if (k % stride == 0) emit(t, backend.reference(), backend.qubit(), g, it, Phase::Lowering);
        if (t - t_it - kRaiseTime > kMaxLoweringTime)
          throw std::runtime_error("run_time_independent: <Lz> did not return to zero within 4 pi after raising");
      }
    }

    sum.w_joint = 0.0;
    sum.w_qubit = wq - wq_start;
    sum.e_ref_end = model.reference_energy(g, rho_end, chi_end);
    sum.s_ref_end = checked_entropy(rho_end, "reference");
    sum.delta_s_ref = sum.s_ref_end - s_start;
    sum.t_end = t_end;
    traj.iterations.push_back(sum);
    rho = backend.reference();
  }
  return traj;
}

}  // namespace detail

inline Trajectory run_time_independent(const ProtocolConfig& cfg, TiBackend backend = TiBackend::Block) {
  if (cfg.kind != ProtocolKind::TimeIndependent)
    throw InvalidArgument("run_time_independent: config kind is not time_independent");
  cfg.validate();
  return backend == TiBackend::Block ? detail::run_time_independent_with<detail::TiBlockBackend>(cfg)
                                     : detail::run_time_independent_with<detail::TiJointBackend>(cfg);
}

}  // namespace qts
