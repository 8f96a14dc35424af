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

// Angular-momentum, coupling, boson and initial-state constructors.
//
// Spin bases are ordered by descending m, so |l,l> is basis vector 0. The
// qubit is the spin-1/2 case of the same construction; |0> is the
// sigma_z = -1 state and therefore sits at basis index 1.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "qts/errors.hpp"
#include "qts/tensor.hpp"

namespace qts {

class SpinSystem {
 public:
  explicit SpinSystem(int two_l) : two_l_(two_l) {
    if (two_l < 0) throw InvalidArgument("SpinSystem: two_l must be >= 0, got " + std::to_string(two_l));
  }

  int two_l() const noexcept { return two_l_; }
  double l() const noexcept { return 0.5 * two_l_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(two_l_) + 1; }

  // Basis position of |l,m>, m = two_m/2.
  std::size_t index_of(int two_m) const {
    if (std::abs(two_m) > two_l_ || (two_l_ - two_m) % 2 != 0)
      throw InvalidArgument("SpinSystem: m = " + std::to_string(two_m) + "/2 is not a valid projection for two_l = " +
                            std::to_string(two_l_));
    return static_cast<std::size_t>((two_l_ - two_m) / 2);
  }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  int two_l_;
};

struct SpinOperators {
  Operator x, y, z;

  Operator casimir() const { return x * x + y * y + z * z; }
  // n.L for a 3-vector n.
  Operator along(const std::array<double, 3>& n) const { return n[0] * x + n[1] * y + n[2] * z; }
};

inline SpinOperators angular_momentum(const SpinSystem& sys) {
  const auto n = static_cast<Eigen::Index>(sys.dim());
  const double l = sys.l();
  Matrix x = Matrix::Zero(n, n), y = Matrix::Zero(n, n), z = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double m = l - static_cast<double>(k);
    z(k, k) = m;
    if (k > 0) {
      // <m+1| L+ |m>
      const double c = std::sqrt(l * (l + 1.0) - m * (m + 1.0));
      x(k - 1, k) = x(k, k - 1) = 0.5 * c;
      y(k - 1, k) = Complex(0.0, -0.5 * c);
      y(k, k - 1) = Complex(0.0, 0.5 * c);
    }
  }
  const SubsystemLayout layout{sys.dim()};
  return {Operator(std::move(x), layout), Operator(std::move(y), layout), Operator(std::move(z), layout)};
}

// Pauli matrices in the spin-1/2 basis above: sigma_z = diag(1, -1).
inline SpinOperators pauli() {
  const SpinOperators s = angular_momentum(SpinSystem(1));
  return {2.0 * s.x, 2.0 * s.y, 2.0 * s.z};
}

inline constexpr std::size_t kQubitDim = 2;
inline constexpr std::size_t kQubitGround = 1;   // |0>, sigma_z = -1
inline constexpr std::size_t kQubitExcited = 0;  // |1>, sigma_z = +1

inline Vector basis_vector(std::size_t dim, std::size_t i) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

inline DensityMatrix qubit_ground() { return DensityMatrix::pure(basis_vector(kQubitDim, kQubitGround)); }
inline DensityMatrix qubit_excited() { return DensityMatrix::pure(basis_vector(kQubitDim, kQubitExcited)); }

inline Vector spin_state(const SpinSystem& sys, int two_m) { return basis_vector(sys.dim(), sys.index_of(two_m)); }

// exp(-i angle n.L).
inline Operator rotation(const SpinSystem& sys, const std::array<double, 3>& axis, double angle) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-9) throw InvalidArgument("rotation: axis is not a unit vector");
  if (angle == 0.0) return Operator::identity(sys.dim());
  return propagator(angular_momentum(sys).along(axis), angle);
}

struct LsCoupling {
  Operator l_dot_s;    // L.S on ref (x) qubit
  Operator pi_plus;    // projector onto j = l + 1/2
  Operator pi_minus;   // projector onto j = l - 1/2
};

inline LsCoupling ls_coupling(const SpinSystem& ref) {
  const SubsystemLayout layout{ref.dim(), kQubitDim};
  const SpinOperators lv = angular_momentum(ref);
  const SpinOperators sv = angular_momentum(SpinSystem(1));
  Operator lds = kron(lv.x, sv.x) + kron(lv.y, sv.y) + kron(lv.z, sv.z);

  // Coupled states from Clebsch-Gordan coefficients. With two_M = 2M,
  // |j = l + 1/2, M> =  sqrt((l+M+1/2)/(2l+1)) |M-1/2>|up> + sqrt((l-M+1/2)/(2l+1)) |M+1/2>|down>
  // |j = l - 1/2, M> = -sqrt((l-M+1/2)/(2l+1)) |M-1/2>|up> + sqrt((l+M+1/2)/(2l+1)) |M+1/2>|down>
  const int tl = ref.two_l();
  const auto n = static_cast<Eigen::Index>(layout.total());
  const double denom = tl + 1.0;
  auto joint = [&](int two_m, std::size_t q) -> Eigen::Index {
    return static_cast<Eigen::Index>(ref.index_of(two_m) * kQubitDim + q);
  };
  auto projector = [&](int two_j, int sign) {
    Matrix p = Matrix::Zero(n, n);
    for (int two_M = -two_j; two_M <= two_j; two_M += 2) {
      Vector v = Vector::Zero(n);
      const double a = (tl + two_M + 1) / (2.0 * denom);  // (l+M+1/2)/(2l+1)
      const double b = (tl - two_M + 1) / (2.0 * denom);  // (l-M+1/2)/(2l+1)
      if (std::abs(two_M - 1) <= tl) v(joint(two_M - 1, 0)) = sign > 0 ? std::sqrt(a) : -std::sqrt(b);
      if (std::abs(two_M + 1) <= tl) v(joint(two_M + 1, 1)) = sign > 0 ? std::sqrt(b) : std::sqrt(a);
      p += v * v.adjoint();
    }
    return Operator(std::move(p), layout);
  };
  Operator pp = projector(tl + 1, +1);
  Operator pm = tl > 0 ? projector(tl - 1, -1) : Operator::zero(layout);
  return {lds.with_layout(layout), std::move(pp), std::move(pm)};
}

class BosonMode {
 public:
  BosonMode(std::size_t trunc_dim, double omega) : dim_(trunc_dim), omega_(omega) {
    if (trunc_dim < 2) throw InvalidArgument("BosonMode: truncation dimension D must be >= 2");
  }

  std::size_t dim() const noexcept { return dim_; }
  double omega() const noexcept { return omega_; }

 private:
  std::size_t dim_;
  double omega_;
};

struct BosonOperators {
  Operator a;       // a|n> = sqrt(n)|n-1>
  Operator number;  // diag(0, ..., D-1)
};

inline BosonOperators boson_ops(const BosonMode& mode) {
  const auto n = static_cast<Eigen::Index>(mode.dim());
  Matrix a = Matrix::Zero(n, n), num = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    num(k, k) = static_cast<double>(k);
    if (k > 0) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return {Operator(std::move(a)), Operator(std::move(num))};
}

struct InitialStates {
  DensityMatrix rho0;  // R_y(phi)|l,m><l,m|R_y(phi)^dagger
  DensityMatrix chi0;  // |0><0|
};

inline Vector rotated_spin_state(const SpinSystem& ref, int two_m, double phi) {
  const Vector e = spin_state(ref, two_m);
  return rotation(ref, {0.0, 1.0, 0.0}, phi).matrix() * e;
}

inline InitialStates initial_states(const SpinSystem& ref, int two_m, double phi) {
  Vector psi = rotated_spin_state(ref, two_m, phi);
  psi.normalize();
  return {DensityMatrix::pure(psi), qubit_ground()};
}

}  // namespace qts
