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

#include <string>

#include "qts/operators.hpp"
#include "qts/protocols/trajectory.hpp"
#include "qts/tensor.hpp"
#include "qts/thermo.hpp"

namespace qts::detail {

// Von Neumann entropy that also enforces the eigenvalue floor, so every
// recorded reference state has passed the full density-matrix check.
inline double checked_entropy(const DensityMatrix& rho, const char* what) {
  const RealVector ev = Eigen::SelfAdjointEigenSolver<Matrix>(rho.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
  if (ev.minCoeff() < kEigenvalueFloor)
    throw std::runtime_error(std::string(what) + ": state has eigenvalue " + std::to_string(ev.minCoeff()));
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > kEntropyClamp) s -= ev(i) * std::log(ev(i));
  return std::max(0.0, s);
}

// Observables shared by all engines: reference L and qubit S = sigma/2.
struct Observer {
  SpinOperators l;
  SpinOperators s;

  explicit Observer(const SpinSystem& ref) : l(angular_momentum(ref)), s(angular_momentum(SpinSystem(1))) {}

  Record operator()(double t, const DensityMatrix& rho, const DensityMatrix& chi, double e_ref, double w_joint,
                    double w_qubit, int iteration, Phase phase) const {
    Record r;
    r.t = t;
    r.lx = expect(l.x, rho).real();
    r.ly = expect(l.y, rho).real();
    r.lz = expect(l.z, rho).real();
    checked_entropy(chi, "qubit");
    r.sx = expect(s.x, chi).real();
    r.sy = expect(s.y, chi).real();
    r.sz = expect(s.z, chi).real();
    r.e_ref = e_ref;
    r.s_ref = checked_entropy(rho, "reference");
    r.purity_ref = purity(rho);
    r.w_joint_cum = w_joint;
    r.w_qubit_cum = w_qubit;
    r.iteration = iteration;
    r.phase = phase;
    return r;
  }
};

}  // namespace qts::detail
