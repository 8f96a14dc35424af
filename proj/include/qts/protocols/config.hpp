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
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "qts/errors.hpp"

namespace qts {

enum class ProtocolKind { TimeDependent, TimeIndependent, Bosonic };

// How the time-independent engine reuses its reference across iterations.
// FlipCoupling negates the qubit-reference coupling term every other
// iteration so a fresh |0> qubit is again the lower level. AlternateQubit
// keeps H fixed and alternates the fresh qubit between |0> and |1>. The two
// are related by a qubit bit flip and give identical reference dynamics.
enum class IterationMethod { FlipCoupling, AlternateQubit };

struct BathParams {
  double omega = 10.0;
  double alpha = 2.0;
  std::size_t dim = 7;

  friend bool operator==(const BathParams&, const BathParams&) = default;
};

struct ProtocolConfig {
  ProtocolKind kind = ProtocolKind::TimeDependent;
  int two_l = 2;
  double beta = 1.0;
  double theta = std::numbers::pi / 4;  // time-independent and bosonic
  double dt = 1e-4;                     // time-independent and bosonic
  int n_lowering_steps = 200;           // time-dependent
  double c_target = 0.99;               // time-dependent
  int iterations = 1;
  std::optional<double> phi0;  // unset: 0 (time-dependent) or 3*pi/2
  std::optional<BathParams> bath;
  int sample_stride = 1;
  std::optional<double> t_end;  // bosonic; unset means pi/2 plus one bath period
  IterationMethod iteration_method = IterationMethod::FlipCoupling;

  double initial_angle() const {
    if (phi0) return *phi0;
    return kind == ProtocolKind::TimeDependent ? 0.0 : 1.5 * std::numbers::pi;
  }

  // The extra period lets a one-period running average of sigma_z reach the
  // point where <Lz> returns to zero.
  double end_time() const {
    if (t_end) return *t_end;
    const double extra = bath && bath->omega > 0.0 ? 2.0 * std::numbers::pi / bath->omega : 0.0;
    return std::numbers::pi / 2 + extra;
  }

  // First violated constraint as (key, message), or nullopt.
  std::optional<std::pair<std::string, std::string>> first_violation() const {
    auto bad = [](const char* key, std::string msg) {
      return std::optional<std::pair<std::string, std::string>>(std::in_place, key, std::move(msg));
    };
    const bool td = kind == ProtocolKind::TimeDependent;
    const bool bos = kind == ProtocolKind::Bosonic;
    if (two_l < 1) return bad("two_l", "must be >= 1");
    if (!(beta > 0.0) || !std::isfinite(beta)) return bad("beta", "must be a finite value > 0");
    if (iterations < 1) return bad("iterations", "must be >= 1");
    if (bos && iterations != 1) return bad("iterations", "the bosonic engine runs a single evolution");
    if (sample_stride < 1) return bad("sample_stride", "must be >= 1");
    if (phi0 && !std::isfinite(*phi0)) return bad("phi0", "must be finite");
    if (td) {
      if (n_lowering_steps < 1) return bad("n_lowering_steps", "must be >= 1");
      if (!(c_target > 0.0 && c_target < 1.0)) return bad("c_target", "must lie in (0, 1)");
    } else {
      if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) return bad("theta", "must lie in [0, pi/2]");
      if (!(dt > 0.0) || !std::isfinite(dt)) return bad("dt", "must be a finite value > 0");
    }
    if (bos) {
      if (!bath) return bad("omega", "bosonic runs need omega, alpha and D");
      if (!(bath->omega > 0.0) || !std::isfinite(bath->omega)) return bad("omega", "must be a finite value > 0");
      if (!std::isfinite(bath->alpha)) return bad("alpha", "must be finite");
      if (bath->dim < 2) return bad("D", "must be >= 2");
      if (t_end && (!(*t_end > 0.0) || !std::isfinite(*t_end))) return bad("t_end", "must be a finite value > 0");
      if (end_time() < dt) return bad("t_end", "must span at least one time step");
    }
    return std::nullopt;
  }

  void validate() const {
    if (auto v = first_violation()) throw InvalidArgument("config: " + v->first + ": " + v->second);
  }

  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

inline const char* to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::TimeDependent: return "time_dependent";
    case ProtocolKind::TimeIndependent: return "time_independent";
    case ProtocolKind::Bosonic: return "bosonic";
  }
  return "?";
}

inline const char* to_string(IterationMethod m) {
  return m == IterationMethod::FlipCoupling ? "flip_coupling" : "alternate_qubit";
}

}  // namespace qts
