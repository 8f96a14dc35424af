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

// Gibbs states, mean-field reduced Hamiltonians, the instantaneous qubit
// thermalization channel, and energy / entropy / work bookkeeping.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qts/errors.hpp"
#include "qts/tensor.hpp"

namespace qts {

inline constexpr double kEntropyClamp = 1e-15;

// exp(-beta h)/Z. Weights are shifted by the ground energy before
// exponentiating, so large beta*spread does not overflow.
inline DensityMatrix gibbs(const Operator& h, double beta) {
  if (!(beta >= 0.0)) throw InvalidArgument("gibbs: beta must be >= 0");
  if (!h.is_hermitian()) throw InvalidArgument("gibbs: Hamiltonian is not Hermitian");
  if (beta == 0.0) return DensityMatrix::maximally_mixed(h.layout());
  const EigenSystem es = eigh(h);
  RealVector w = (-beta * (es.values.array() - es.values.minCoeff())).exp().matrix();
  w /= w.sum();
  const Matrix& v = es.vectors.matrix();
  Matrix m = v * w.cast<Complex>().asDiagonal() * v.adjoint();
  return DensityMatrix::trusted(Operator(std::move(m), h.layout()).hermitized());
}

// tr_other[(other_state (x) 1) h_joint], where "other" is every factor of
// h_joint except `keep`, in their original order.
inline Operator reduced_hamiltonian(const Operator& h_joint, const DensityMatrix& other_state, std::size_t keep) {
  const auto split = detail::make_trace_split(h_joint.layout(), {keep});
  const std::size_t n = h_joint.layout().size();
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i)
    if (i != keep) others.push_back(i);
  if (other_state.layout().total() != split.traced_dim ||
      (other_state.layout().size() > 1 && other_state.layout() != h_joint.layout().select(others)))
    throw InvalidArgument("reduced_hamiltonian: state layout " + other_state.layout().to_string() +
                          " does not match the traced factors of " + h_joint.layout().to_string());

  const std::size_t nk = split.kept_dim, nt = split.traced_dim;
  const Matrix& h = h_joint.matrix();
  const Matrix& rho = other_state.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
  // out(k, k') = sum_{o, o''} rho(o, o'') h((k, o''), (k', o))
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t kp = 0; kp < nk; ++kp) {
      Complex acc = 0.0;
      for (std::size_t o = 0; o < nt; ++o) {
        const auto col = static_cast<Eigen::Index>(split.index[kp * nt + o]);
        for (std::size_t o2 = 0; o2 < nt; ++o2) {
          const Complex r = rho(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(o2));
          if (r != Complex(0.0, 0.0)) acc += r * h(static_cast<Eigen::Index>(split.index[k * nt + o2]), col);
        }
      }
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(kp)) = acc;
    }
  return Operator(std::move(out), split.kept_layout).hermitized();
}

struct QubitThermalization {
  DensityMatrix joint;  // reference (x) qubit product state
  DensityMatrix reference;
  DensityMatrix qubit;
  Operator qubit_hamiltonian;  // reduced Hamiltonian the qubit was thermalized against
};

// Replaces the qubit (last factor of a reference (x) qubit state) by the
// Gibbs state of its reduced Hamiltonian; the reference marginal is kept.
inline QubitThermalization thermalize_qubit_parts(const DensityMatrix& sigma, const Operator& h_joint, double beta) {
  if (sigma.layout().size() != 2 || sigma.layout()[1] != 2)
    throw InvalidArgument("thermalize_qubit: expected a reference (x) qubit layout, got " + sigma.layout().to_string());
  if (h_joint.layout() != sigma.layout())
    throw InvalidArgument("thermalize_qubit: Hamiltonian layout " + h_joint.layout().to_string() +
                          " differs from state layout " + sigma.layout().to_string());
  DensityMatrix rho = partial_trace(sigma, 0);
  Operator hs = reduced_hamiltonian(h_joint, rho, 1);
  DensityMatrix chi = gibbs(hs, beta);
  DensityMatrix joint = kron(rho, chi);
  return {std::move(joint), std::move(rho), std::move(chi), std::move(hs)};
}

inline DensityMatrix thermalize_qubit(const DensityMatrix& sigma, const Operator& h_joint, double beta) {
  return thermalize_qubit_parts(sigma, h_joint, beta).joint;
}

// Von Neumann entropy in nats; eigenvalues below kEntropyClamp contribute 0.
inline double entropy(const DensityMatrix& rho) {
  const RealVector ev =
      Eigen::SelfAdjointEigenSolver<Matrix>(rho.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kEntropyClamp) s -= ev(i) * std::log(ev(i));
  return std::max(0.0, s);
}

inline double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

// S(A) + S(B) - S(AB) for a two-factor state.
inline double mutual_information(const DensityMatrix& sigma) {
  if (sigma.layout().size() != 2) throw InvalidArgument("mutual_information: expected two subsystems");
  return entropy(partial_trace(sigma, 0)) + entropy(partial_trace(sigma, 1)) - entropy(sigma);
}

// tr[sigma (h_next - h_prev)]: the energy change from a Hamiltonian update
// at fixed state. Engines report extracted work as the negative sum.
inline double work_increment(const DensityMatrix& sigma, const Operator& h_prev, const Operator& h_next) {
  if (h_prev.dim() != sigma.dim() || h_next.dim() != sigma.dim())
    throw InvalidArgument("work_increment: dimension mismatch");
  const Matrix dh = h_next.matrix() - h_prev.matrix();
  return (sigma.matrix().transpose().array() * dh.array()).sum().real();
}

// Work from quasi-statically lowering one level of a two-level system from
// E_max to 0 in contact with a bath at inverse temperature beta.
inline double semiclassical_work(double e_max, double beta) {
  if (!(e_max >= 0.0)) throw InvalidArgument("semiclassical_work: E_max must be >= 0");
  if (!(beta > 0.0)) throw InvalidArgument("semiclassical_work: beta must be > 0");
  return (std::numbers::ln2 - std::log1p(std::exp(-beta * e_max))) / beta;
}

struct ThermoReport {
  double energy = 0.0;
  double entropy = 0.0;
  double free_energy = 0.0;
  double work_joint = 0.0;
  double work_qubit = 0.0;
  double purity = 1.0;
};

inline ThermoReport thermo_report(const DensityMatrix& rho, const Operator& h, double beta, double work_joint = 0.0,
                                  double work_qubit = 0.0) {
  if (!(beta > 0.0)) throw InvalidArgument("thermo_report: beta must be > 0");
  ThermoReport r;
  r.energy = expect(h, rho).real();
  r.entropy = entropy(rho);
  r.free_energy = r.energy - r.entropy / beta;
  r.work_joint = work_joint;
  r.work_qubit = work_qubit;
  r.purity = purity(rho);
  return r;
}

}  // namespace qts
