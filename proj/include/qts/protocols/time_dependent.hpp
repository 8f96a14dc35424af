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

// Time-dependent protocol: H(t) = f(t) L.S - E_-(t), raised in closed form
// and then lowered in discrete thermalize / evolve / update steps.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "qts/errors.hpp"
#include "qts/operators.hpp"
#include "qts/protocols/config.hpp"
#include "qts/protocols/observe.hpp"
#include "qts/protocols/schedule.hpp"
#include "qts/protocols/trajectory.hpp"
#include "qts/tensor.hpp"
#include "qts/thermo.hpp"

namespace qts {

// Lower qubit level of the mean-field Hamiltonian f <L>.S: -|f| |<L>| / 2.
inline double lower_level_energy(double f, const DensityMatrix& rho, const SpinOperators& l) {
  const double x = expect(l.x, rho).real(), y = expect(l.y, rho).real(), z = expect(l.z, rho).real();
  return -0.5 * std::abs(f) * std::sqrt(x * x + y * y + z * z);
}

namespace detail {

class TimeDependentEngine {
 public:
  using StateHook = std::function<void(std::size_t, const DensityMatrix&)>;

  explicit TimeDependentEngine(const ProtocolConfig& cfg)
      : cfg_(checked(cfg)),
        ref_(cfg.two_l),
        l_(ref_.l()),
        layout_{ref_.dim(), kQubitDim},
        ls_(ls_coupling(ref_)),
        sparse_(ls_),
        obs_(ref_),
        sched_(schedule_raising(cfg.two_l, cfg.beta, cfg.c_target)),
        id_(Operator::identity(layout_)) {}

  const RaisingSchedule& schedule() const noexcept { return sched_; }
  const LsCoupling& coupling() const noexcept { return ls_; }
  double iteration_span() const noexcept { return 2.0 * sched_.capital_T; }

  DensityMatrix initial_reference() const {
    return initial_states(ref_, ref_.two_l(), cfg_.initial_angle()).rho0;
  }

  // f L.S, minus E_- when `offset` is set.
  Operator hamiltonian(double f, const DensityMatrix& rho, bool offset) const {
    Operator h = f * ls_.l_dot_s;
    if (offset) h -= lower_level_energy(f, rho, obs_.l) * id_;
    return h;
  }

  double reference_energy(const Operator& h, const DensityMatrix& rho, const DensityMatrix& chi) const {
    return expect(reduced_hamiltonian(h, chi, 0), rho).real();
  }

  // One raise + lower cycle starting from reference `rho` and a fresh |0>.
  // Records go to `out` when non-null; `hook` sees the joint state after
  // every lowering thermalization. Returns the reference after the cycle.
  DensityMatrix iterate(const DensityMatrix& rho_start, int iteration, bool offset, Trajectory* out,
                        IterationSummary& summary, double& w_joint, double& w_qubit,
                        const StateHook& hook = nullptr) const {
    const double T = sched_.capital_T;
    const std::size_t N = static_cast<std::size_t>(cfg_.n_lowering_steps);
    const double dtau = T / static_cast<double>(N);
    const auto stride = static_cast<std::size_t>(cfg_.sample_stride);
    const double t0 = (iteration - 1) * iteration_span();
    const DensityMatrix chi0 = qubit_ground();
    const DensityMatrix sigma0 = kron(rho_start, chi0);

    summary = IterationSummary{};
    summary.iteration = iteration;
    summary.t_start = t0;
    const double s_start = checked_entropy(rho_start, "reference");

    auto emit = [&](double t, const DensityMatrix& rho, const DensityMatrix& chi, const Operator& h, Phase ph) {
      if (out)
        out->records.push_back(obs_(t, rho, chi, reference_energy(h, rho, chi), w_joint, w_qubit, iteration, ph));
    };

    if (iteration == 1) emit(t0, rho_start, chi0, Operator::zero(layout_), Phase::Initial);

    // Raising. The closed-form propagator returns the joint state to sigma0
    // at t = T, so only intermediate samples need evolving.
    if (out) {
      for (std::size_t j = stride; j < N; j += stride) {
        const double t = static_cast<double>(j) * dtau;
        const DensityMatrix sig = sigma0.evolved(ls_propagator(sparse_, l_, t * t / (2.0 * l_)));
        const DensityMatrix rho = partial_trace(sig, 0), chi = partial_trace(sig, 1);
        emit(t0 + t, rho, chi, hamiltonian(t / l_, rho, offset), Phase::Raising);
      }
    }
    const Operator h_top = hamiltonian(T / l_, rho_start, offset);
    summary.w_raise = -work_increment(sigma0, Operator::zero(layout_), h_top);

    // Lowering.
    DensityMatrix sigma = sigma0;
    Operator h = h_top;
    double wj = 0.0, wq = 0.0;
    summary.e_ref_start = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      const double tau = static_cast<double>(k) * dtau;
      const double f = (T - tau) / l_;
      const double f_next = (T - tau - dtau) / l_;
      const QubitThermalization th = thermalize_qubit_parts(sigma, h, cfg_.beta);
      sigma = th.joint;
      if (hook) hook(k, sigma);
      if (k % stride == 0) emit(t0 + T + tau, th.reference, th.qubit, h, Phase::Lowering);

      SparseMatrix u = ls_propagator(sparse_, l_, f * dtau);
      if (offset) u *= std::exp(Complex(0.0, lower_level_energy(f, th.reference, obs_.l) * dtau));
      sigma = sigma.evolved(u);

      const DensityMatrix rho_next = partial_trace(sigma, 0);
      const Operator h_next = hamiltonian(k + 1 == N ? 0.0 : f_next, rho_next, offset);
      const double dw = -work_increment(sigma, h, h_next);
      const double dws = -work_increment(th.qubit, th.qubit_hamiltonian, reduced_hamiltonian(h_next, rho_next, 1));
      wj += dw;
      wq += dws;
      w_joint += dw;
      w_qubit += dws;
      h = h_next;
    }
    // f = 0: the qubit relaxes to I/2.
    const QubitThermalization fin = thermalize_qubit_parts(sigma, h, cfg_.beta);
    if (hook) hook(N, fin.joint);
    emit(t0 + 2.0 * T, fin.reference, fin.qubit, h, Phase::Lowering);

    summary.w_joint = wj;
    summary.w_qubit = wq;
    summary.e_ref_end = reference_energy(h, fin.reference, fin.qubit);
    summary.s_ref_end = checked_entropy(fin.reference, "reference");
    summary.delta_s_ref = summary.s_ref_end - s_start;
    summary.t_end = t0 + 2.0 * T;
    return fin.reference;
  }

 private:
  static const ProtocolConfig& checked(const ProtocolConfig& cfg) {
    if (cfg.kind != ProtocolKind::TimeDependent) throw InvalidArgument("run_time_dependent: config kind is not time_dependent");
    cfg.validate();
    return cfg;
  }

  ProtocolConfig cfg_;
  SpinSystem ref_;
  double l_;
  SubsystemLayout layout_;
  LsCoupling ls_;
  SparseLsProjectors sparse_;
  Observer obs_;
  RaisingSchedule sched_;
  Operator id_;
};

}  // namespace detail

inline Trajectory run_time_dependent(const ProtocolConfig& cfg) {
  const detail::TimeDependentEngine engine(cfg);
  Trajectory traj;
  DensityMatrix rho = engine.initial_reference();
  double wj = 0.0, wq = 0.0;
  for (int it = 1; it <= cfg.iterations; ++it) {
    IterationSummary s;
    rho = engine.iterate(rho, it, true, &traj, s, wj, wq);
    traj.iterations.push_back(s);
  }
  return traj;
}

struct OffsetEquivalenceReport {
  double max_state_distance = 0.0;       // max entrywise joint-state difference
  double closed_cycle_work_plain = 0.0;  // H = f L.S
  double closed_cycle_work_offset = 0.0; // H = f L.S - E_-
  std::vector<double> per_iteration_plain;
  std::vector<double> per_iteration_offset;

  bool states_identical() const noexcept { return max_state_distance <= 1e-10; }
  double work_difference() const noexcept { return std::abs(closed_cycle_work_plain - closed_cycle_work_offset); }
};

// Runs the protocol with and without the E_- offset in the generator and
// compares joint states step by step. Closed-cycle work includes raising.
inline OffsetEquivalenceReport offset_equivalence_check(const ProtocolConfig& cfg) {
  const detail::TimeDependentEngine engine(cfg);
  OffsetEquivalenceReport rep;
  DensityMatrix rho_plain = engine.initial_reference(), rho_offset = rho_plain;
  double wj = 0.0, wq = 0.0;
  for (int it = 1; it <= cfg.iterations; ++it) {
    std::vector<DensityMatrix> states;
    IterationSummary sp, so;
    rho_plain = engine.iterate(rho_plain, it, false, nullptr, sp, wj, wq,
                               [&](std::size_t, const DensityMatrix& s) { states.push_back(s); });
    rho_offset = engine.iterate(rho_offset, it, true, nullptr, so, wj, wq, [&](std::size_t k, const DensityMatrix& s) {
      rep.max_state_distance = std::max(rep.max_state_distance, max_abs_diff(states.at(k).op(), s.op()));
    });
    rep.per_iteration_plain.push_back(sp.w_raise + sp.w_joint);
    rep.per_iteration_offset.push_back(so.w_raise + so.w_joint);
    rep.closed_cycle_work_plain += rep.per_iteration_plain.back();
    rep.closed_cycle_work_offset += rep.per_iteration_offset.back();
  }
  return rep;
}

}  // namespace qts
