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

// Timing of the qubit's response to a resonant bath mode.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "qts/errors.hpp"
#include "qts/protocols/trajectory.hpp"

namespace qts {

struct ResonanceReport {
  double omega = 0.0;
  double target_lz = 0.0;  // <Lz> at which 2 sin(theta) <Lz> = omega
  double t_star = std::numeric_limits<double>::quiet_NaN();
  double t_steepest = std::numeric_limits<double>::quiet_NaN();
  double window = 0.0;  // smoothing window, one bath period
  bool crossed = false;
  bool edge = false;  // maximum sits on the last point the averaged series covers

  double lag() const { return t_steepest - t_star; }
};

// t_star: first downward crossing of <Lz> through target_lz, interpolated.
// t_steepest: largest |d<sigma_z>/dt| after averaging sigma_z over one bath
// period 2 pi/omega, searched in [2 pi/omega, first time <Lz> <= 0]. The
// averaging removes the fast oscillation at the bath frequency; the lower
// limit excludes the switch-on transient. When the trajectory ends before
// the upper limit, a maximum on the last covered point is flagged as edge.
inline ResonanceReport resonance_timing(const Trajectory& traj, double omega, double theta = std::numbers::pi / 4) {
  const auto& r = traj.records;
  if (r.size() < 5) throw InvalidArgument("resonance_timing: trajectory too short");
  if (!(omega > 0.0)) throw InvalidArgument("resonance_timing: omega must be > 0");
  const double s = std::sin(theta);
  if (!(s > 0.0)) throw InvalidArgument("resonance_timing: theta must be > 0");

  ResonanceReport rep;
  rep.omega = omega;
  rep.target_lz = omega / (2.0 * s);
  rep.window = 2.0 * std::numbers::pi / omega;
  const double h = r[1].t - r[0].t;
  const std::size_t n = r.size();

  for (std::size_t i = 1; i < n; ++i)
    if (r[i - 1].lz > rep.target_lz && r[i].lz <= rep.target_lz) {
      const double a = (r[i - 1].lz - rep.target_lz) / (r[i - 1].lz - r[i].lz);
      rep.t_star = r[i - 1].t + a * (r[i].t - r[i - 1].t);
      rep.crossed = true;
      break;
    }

  std::size_t i_zero = n;
  for (std::size_t i = 0; i < n; ++i)
    if (r[i].lz <= 0.0) {
      i_zero = i;
      break;
    }

  const auto half = static_cast<std::size_t>(std::lround(rep.window / h / 2.0));
  std::vector<double> avg(n, 0.0);
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + 2.0 * r[i].sz;
  for (std::size_t i = half; i + half < n; ++i)
    avg[i] = (prefix[i + half + 1] - prefix[i - half]) / static_cast<double>(2 * half + 1);

  double best = -1.0;
  std::size_t i_best = 0, i_last = 0;
  for (std::size_t i = half + 1; i + half + 1 < n && i < i_zero; ++i) {
    if (r[i].t < rep.window) continue;
    i_last = i;
    const double deriv = std::abs(avg[i + 1] - avg[i - 1]) / (r[i + 1].t - r[i - 1].t);
    if (deriv > best) {
      best = deriv;
      i_best = i;
      rep.t_steepest = r[i].t;
    }
  }
  rep.edge = best >= 0.0 && i_best == i_last && i_last + 1 < i_zero;
  return rep;
}

}  // namespace qts
