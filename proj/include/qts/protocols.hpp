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

#include "qts/protocols/analysis.hpp"
#include "qts/protocols/bosonic.hpp"
#include "qts/protocols/config.hpp"
#include "qts/protocols/schedule.hpp"
#include "qts/protocols/time_dependent.hpp"
#include "qts/protocols/time_independent.hpp"
#include "qts/protocols/trajectory.hpp"

namespace qts {

inline Trajectory run_protocol(const ProtocolConfig& cfg) {
  switch (cfg.kind) {
    case ProtocolKind::TimeDependent: return run_time_dependent(cfg);
    case ProtocolKind::TimeIndependent: return run_time_independent(cfg);
    case ProtocolKind::Bosonic: return run_bosonic(cfg);
  }
  throw InvalidArgument("run_protocol: unknown protocol kind");
}

}  // namespace qts
