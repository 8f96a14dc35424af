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

#include <cmath>
#include <numbers>

#include "qts/errors.hpp"
#include "qts/operators.hpp"
#include "qts/tensor.hpp"

namespace qts {

struct RaisingSchedule {
  int n = 1;               // Gamma = 2 pi n
  double capital_T = 0.0;  // raising duration; f(T) = T/l
  double Gamma = 0.0;      // (l + 1/2) Phi
  double Phi = 0.0;        // integral of f over [0, T]
};

// Smallest n whose raising time keeps the extracted fraction of the
// quasi-static optimum at or above c_target, then the matching T and Gamma.
inline RaisingSchedule schedule_raising(int two_l, double beta, double c_target) {
  if (two_l < 1) throw InvalidArgument("schedule_raising: two_l must be >= 1");
  if (!(beta > 0.0)) throw InvalidArgument("schedule_raising: beta must be > 0");
  if (!(c_target > 0.0 && c_target < 1.0)) throw InvalidArgument("schedule_raising: c_target must lie in (0, 1)");
  const double l = 0.5 * two_l;
  const double a = 2.0 + 1.0 / l;
  const double x = std::log(std::exp2(1.0 - c_target) - 1.0);
  const double bound = a / (8.0 * std::numbers::pi * beta * beta) * x * x;
  RaisingSchedule s;
  s.n = std::max(1, static_cast<int>(std::ceil(bound)));
  s.capital_T = std::sqrt(8.0 * std::numbers::pi * s.n / a);
  s.Gamma = 0.25 * a * s.capital_T * s.capital_T;
  s.Phi = s.capital_T * s.capital_T / (2.0 * l);
  return s;
}

// exp(-i Phi L.S) = exp(-i Phi l/2) [Pi+ + exp(i Gamma) Pi-], returned
// without the global phase. Equals the identity when Gamma = 2 pi n.
inline Operator raising_unitary(const LsCoupling& ls, const RaisingSchedule& s) {
  return ls.pi_plus + std::exp(Complex(0.0, s.Gamma)) * ls.pi_minus;
}

// exp(-i phi L.S) from the projector decomposition, phase included.
inline Operator ls_propagator(const LsCoupling& ls, double l, double phi) {
  return std::exp(Complex(0.0, -phi * l / 2)) * ls.pi_plus + std::exp(Complex(0.0, phi * (l + 1) / 2)) * ls.pi_minus;
}

// The projectors only couple |m, up> with |m+1, down>, so they are at most
// two nonzeros per row; the sparse form makes each lowering step O(dim^2).
struct SparseLsProjectors {
  SparseMatrix pi_plus, pi_minus;

  explicit SparseLsProjectors(const LsCoupling& ls)
      : pi_plus(ls.pi_plus.matrix().sparseView(0.0, 1.0)), pi_minus(ls.pi_minus.matrix().sparseView(0.0, 1.0)) {}
};

inline SparseMatrix ls_propagator(const SparseLsProjectors& ls, double l, double phi) {
  return std::exp(Complex(0.0, -phi * l / 2)) * ls.pi_plus + std::exp(Complex(0.0, phi * (l + 1) / 2)) * ls.pi_minus;
}

// Largest coupling angle for which the peak splitting l sin(2 theta) can
// still exceed kT log 2 at the end of the time-independent protocol.
inline double theta_bound(int two_l, double beta) {
  const double l = 0.5 * two_l;
  if (!(beta > 0.0) || l * beta < std::numbers::ln2)
    throw NoValidTheta("theta_bound: l*beta < log 2 leaves no admissible theta");
  return std::acos(std::min(1.0, std::numbers::ln2 / (beta * l)));
}

}  // namespace qts
