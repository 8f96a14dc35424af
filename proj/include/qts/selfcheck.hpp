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

// Invariant checks run by `qts check`. Each finishes in well under a second.

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "qts/operators.hpp"
#include "qts/protocols.hpp"
#include "qts/tensor.hpp"
#include "qts/thermo.hpp"

namespace qts {

struct SelfCheck {
  std::string name;
  std::function<double()> run;  // returns the measured error
  double tol;
};

inline Operator random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(g(rng), g(rng));
  return Operator(Matrix((m + m.adjoint()) * 0.5));
}

inline std::vector<SelfCheck> self_checks() {
  using std::numbers::pi;
  std::vector<SelfCheck> c;
  c.push_back({"su(2) commutators, two_l <= 12",
               [] {
                 double err = 0.0;
                 for (int tl = 0; tl <= 12; ++tl) {
                   const auto L = angular_momentum(SpinSystem(tl));
                   err = std::max(err, max_abs_diff(commutator(L.x, L.y), Complex(0, 1) * L.z));
                   err = std::max(err, max_abs_diff(commutator(L.y, L.z), Complex(0, 1) * L.x));
                   err = std::max(err, max_abs_diff(commutator(L.z, L.x), Complex(0, 1) * L.y));
                   const double l = 0.5 * tl;
                   err = std::max(err, max_abs_diff(L.casimir(), l * (l + 1) * Operator::identity(L.z.dim())));
                 }
                 return err;
               },
               1e-10});
  c.push_back({"L.S projector decomposition, two_l <= 8",
               [] {
                 double err = 0.0;
                 for (int tl = 1; tl <= 8; ++tl) {
                   const double l = 0.5 * tl;
                   const auto ls = ls_coupling(SpinSystem(tl));
                   err = std::max(err, max_abs_diff(0.5 * (l * ls.pi_plus - (l + 1) * ls.pi_minus), ls.l_dot_s));
                   err = std::max(err, max_abs_diff(ls.pi_plus * ls.pi_plus, ls.pi_plus));
                   err = std::max(err, max_abs_diff(ls.pi_plus + ls.pi_minus, Operator::identity(ls.pi_plus.layout())));
                 }
                 return err;
               },
               1e-10});
  c.push_back({"propagator group property",
               [] {
                 std::mt19937_64 rng(7);
                 const Operator h = random_hermitian(6, rng);
                 return max_abs_diff(propagator(h, 0.3) * propagator(h, 0.9), propagator(h, 1.2));
               },
               1e-9});
  c.push_back({"partial trace in stages",
               [] {
                 std::mt19937_64 rng(11);
                 const Operator m = random_hermitian(18, rng).with_layout(SubsystemLayout{3, 2, 3});
                 return max_abs_diff(partial_trace(partial_trace(m, {0, 2}), 0), partial_trace(m, 0));
               },
               1e-12});
  c.push_back({"thermalize_qubit idempotence",
               [] {
                 const SpinSystem ref(4);
                 const auto ls = ls_coupling(ref);
                 const auto st = initial_states(ref, 4, 0.4);
                 const Operator h = 0.7 * ls.l_dot_s;
                 const auto once = thermalize_qubit(kron(st.rho0, st.chi0), h, 1.0);
                 return max_abs_diff(thermalize_qubit(once, h, 1.0).op(), once.op());
               },
               1e-12});
  c.push_back({"semiclassical work against quadrature",
               [] {
                 // integral of the excited population over [0, E]
                 const double e = 3.0, beta = 1.3;
                 const int n = 2000;
                 double acc = 0.0;
                 for (int i = 0; i <= n; ++i) {
                   const double x = e * i / n;
                   const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                   acc += w / (1.0 + std::exp(beta * x));
                 }
                 return std::abs(acc * e / (3.0 * n) - semiclassical_work(e, beta));
               },
               1e-6});
  c.push_back({"raising schedule returns to the identity",
               [] {
                 const auto ls = ls_coupling(SpinSystem(6));
                 const auto s = schedule_raising(6, 1.0, 0.99);
                 return max_abs_diff(raising_unitary(ls, s), Operator::identity(ls.pi_plus.layout()));
               },
               1e-9});
  c.push_back({"offset equivalence, l = 1",
               [] {
                 ProtocolConfig cfg;
                 cfg.two_l = 2;
                 cfg.n_lowering_steps = 50;
                 const auto rep = offset_equivalence_check(cfg);
                 return std::max(rep.max_state_distance, rep.work_difference());
               },
               1e-10});
  return c;
}

// Prints one PASS/FAIL line per check; true when all pass.
inline bool run_self_checks(std::ostream& os) {
  bool ok = true;
  for (const auto& c : self_checks()) {
    double err = 0.0;
    bool pass = false;
    try {
      err = c.run();
      pass = err <= c.tol;
    } catch (const std::exception& e) {
      os << "FAIL  " << c.name << " (" << e.what() << ")\n";
      ok = false;
      continue;
    }
    os << (pass ? "PASS  " : "FAIL  ") << c.name << "  error " << err << " (tol " << c.tol << ")\n";
    ok = ok && pass;
  }
  return ok;
}

}  // namespace qts
