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

#include <vector>

namespace qts {

enum class Phase { Initial, Raising, Lowering };

struct Record {
  double t = 0.0;
  double lx = 0.0, ly = 0.0, lz = 0.0;
  double sx = 0.0, sy = 0.0, sz = 0.0;
  double e_ref = 0.0;
  double s_ref = 0.0;
  double purity_ref = 1.0;
  double w_joint_cum = 0.0;
  double w_qubit_cum = 0.0;
  // Bookkeeping only; not part of the CSV schema.
  int iteration = 1;
  Phase phase = Phase::Initial;
};

struct IterationSummary {
  int iteration = 1;
  double w_joint = 0.0;   // work extracted from reference + qubit while lowering
  double w_qubit = 0.0;   // work extracted from the qubit's reduced Hamiltonian
  double w_raise = 0.0;   // work extracted during raising (<= 0; 0 for an aligned qubit)
  double delta_s_ref = 0.0;
  double e_ref_start = 0.0;
  double e_ref_end = 0.0;
  double s_ref_end = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;

  double e_ref_gain() const { return e_ref_end - e_ref_start; }
};

struct Trajectory {
  std::vector<Record> records;
  std::vector<IterationSummary> iterations;
};

}  // namespace qts
