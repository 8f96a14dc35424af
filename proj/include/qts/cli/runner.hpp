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

// Batch execution: figure presets and Cartesian parameter sweeps, run in
// parallel with one single-threaded engine per point.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qts/cli/config_io.hpp"
#include "qts/cli/csv.hpp"
#include "qts/errors.hpp"
#include "qts/protocols.hpp"

namespace qts {

// QTS_THREADS caps parallelism; default is the hardware concurrency.
inline std::size_t thread_budget() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QTS_THREADS")) {
    const auto v = detail::parse_integer(env);
    if (!v || *v < 1) throw InvalidArgument("QTS_THREADS must be a positive integer");
    n = static_cast<std::size_t>(*v);
  }
  return n;
}

// Calls f(i) for i in [0, n) on up to `threads` workers; rethrows the
// first exception after all workers finish.
template <class F>
void parallel_for(std::size_t n, std::size_t threads, F&& f) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (err) std::rethrow_exception(err);
}

struct NamedRun {
  std::string name;
  ProtocolConfig cfg;
};

struct PointResult {
  std::string name;
  std::filesystem::path csv;
  Trajectory summary;  // iteration summaries only
  std::optional<ResonanceReport> resonance;
};

// Keeps [A-Za-z0-9._=+-]; anything else becomes '_'.
inline std::string sanitize_filename(std::string s) {
  for (char& c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '_' || c == '=' || c == '+' || c == '-';
    if (!ok) c = '_';
  }
  return s;
}

inline std::vector<PointResult> run_batch(const std::vector<NamedRun>& runs, const std::filesystem::path& out,
                                          std::size_t threads) {
  for (const auto& r : runs) r.cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw IoError(out.string(), "cannot create directory: " + ec.message());
  std::vector<PointResult> results(runs.size());
  parallel_for(runs.size(), threads, [&](std::size_t i) {
    const NamedRun& run = runs[i];
    PointResult& res = results[i];
    res.name = run.name;
    res.csv = out / (sanitize_filename(run.name) + ".csv");
    const Trajectory traj = run_protocol(run.cfg);
    write_csv(traj, res.csv);
    res.summary.iterations = traj.iterations;
    if (run.cfg.kind == ProtocolKind::Bosonic) res.resonance = resonance_timing(traj, run.cfg.bath->omega, run.cfg.theta);
  });
  return results;
}

inline std::filesystem::path write_summary(const std::vector<PointResult>& results, const std::filesystem::path& out) {
  std::string text(kSummaryHeader);
  text += '\n';
  for (const auto& r : results) text += summary_rows(r.name, r.summary);
  const auto path = out / "summary.csv";
  write_text_file(path, text);
  return path;
}

inline std::filesystem::path write_resonance(const std::vector<PointResult>& results, const std::filesystem::path& out) {
  std::string text = "curve,omega,target_Lz,t_star,t_steepest,lag\n";
  for (const auto& r : results)
    if (r.resonance)
      text += r.name + "," + format_double(r.resonance->omega) + "," + format_double(r.resonance->target_lz) + "," +
              format_double(r.resonance->t_star) + "," + format_double(r.resonance->t_steepest) + "," +
              format_double(r.resonance->lag()) + "\n";
  const auto path = out / "resonance.csv";
  write_text_file(path, text);
  return path;
}

// ---- presets ---------------------------------------------------------------

struct Preset {
  std::string id;
  std::string description;
  std::vector<NamedRun> curves;
};

inline std::vector<Preset> preset_table() {
  using std::numbers::pi;
  auto td = [](int two_l, int iterations) {
    ProtocolConfig c;
    c.kind = ProtocolKind::TimeDependent;
    c.two_l = two_l;
    c.beta = 1.0;
    c.n_lowering_steps = 200;
    c.c_target = 0.99;
    c.iterations = iterations;
    return c;
  };
  auto ti = [](int two_l, double theta, double dt, int iterations, int stride) {
    ProtocolConfig c;
    c.kind = ProtocolKind::TimeIndependent;
    c.two_l = two_l;
    c.beta = 1.0;
    c.theta = theta;
    c.dt = dt;
    c.iterations = iterations;
    c.sample_stride = stride;
    return c;
  };
  auto bos = [](double omega) {
    ProtocolConfig c;
    c.kind = ProtocolKind::Bosonic;
    c.two_l = 150;
    c.beta = 0.05;
    c.theta = pi / 4;
    c.dt = 1e-3;
    c.bath = BathParams{omega, 2.0, 7};
    return c;
  };

  std::vector<Preset> t;
  t.push_back({"fig3", "time-dependent protocol, l = 1, one iteration", {{"two_l=2", td(2, 1)}}});
  const std::vector<NamedRun> td_sizes = {
      {"two_l=4", td(4, 10)}, {"two_l=20", td(20, 10)}, {"two_l=100", td(100, 10)}};
  t.push_back({"fig4", "time-dependent protocol, <Lz>(t) over 10 iterations, l = 2, 10, 50", td_sizes});
  t.push_back({"fig5", "time-dependent protocol, work per iteration over 10 iterations, l = 2, 10, 50", td_sizes});
  t.push_back({"fig6",
               "time-independent protocol, E_ref(t), theta = pi/4, dt = 1e-5, l = 2, 10, 50",
               {{"two_l=4", ti(4, pi / 4, 1e-5, 1, 50)},
                {"two_l=20", ti(20, pi / 4, 1e-5, 1, 50)},
                {"two_l=100", ti(100, pi / 4, 1e-5, 1, 50)}}});
  std::vector<NamedRun> thetas;
  for (int k : {1, 2, 4, 6, 7}) {
    const std::string name = k == 4 ? "theta=pi_4" : "theta=" + std::to_string(k) + "pi_16";
    thetas.push_back({name, ti(20, k * pi / 16, 1e-5, 1, 50)});
  }
  t.push_back({"fig7", "time-independent protocol, E_ref(t), l = 10, dt = 1e-5, theta = k pi/16", thetas});
  t.push_back({"fig8",
               "bosonic bath, l = 75, D = 7, beta = 0.05, alpha = 2, omega = 10, 30, 60",
               {{"omega=10", bos(10.0)}, {"omega=30", bos(30.0)}, {"omega=60", bos(60.0)}}});
  t.push_back({"fig9", "time-independent protocol, five iterations, l = 10, theta = pi/4, dt = 1e-4",
               {{"two_l=20", ti(20, pi / 4, 1e-4, 5, 10)}}});
  t.push_back({"fig10", "time-independent protocol, E_ref and S_ref over five iterations, l = 10, dt = 1e-4",
               {{"two_l=20", ti(20, pi / 4, 1e-4, 5, 10)}}});
  return t;
}

inline const Preset& find_preset(const std::string& id) {
  static const std::vector<Preset> table = preset_table();
  for (const auto& p : table)
    if (p.id == id) return p;
  throw InvalidArgument("unknown figure id '" + id + "' (expected fig3 ... fig10)");
}

inline std::string presets_text() {
  std::string out;
  for (const auto& p : preset_table()) {
    out += "[" + p.id + "] " + p.description + "\n";
    for (const auto& c : p.curves) {
      out += "-- " + c.name + "\n" + render_config(c.cfg);
    }
    out += "\n";
  }
  return out;
}

inline std::vector<std::filesystem::path> run_preset(const std::string& id, const std::filesystem::path& out,
                                                     std::size_t threads) {
  const Preset& p = find_preset(id);
  auto results = run_batch(p.curves, out, threads);
  std::vector<std::filesystem::path> files;
  for (const auto& r : results) files.push_back(r.csv);
  files.push_back(write_summary(results, out));
  if (id == "fig8") files.push_back(write_resonance(results, out));
  const auto presets = out / "presets.txt";
  write_text_file(presets, presets_text());
  files.push_back(presets);
  return files;
}

// ---- sweeps ----------------------------------------------------------------

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

// "key=v1,v2,..." -> axis.
inline SweepAxis parse_axis(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) throw ParseError(0, std::string(spec), "axis must look like key=v1,v2,...");
  SweepAxis axis;
  axis.key = std::string(detail::trim(spec.substr(0, eq)));
  std::string_view rest = spec.substr(eq + 1);
  while (true) {
    const auto comma = rest.find(',');
    const auto v = detail::trim(rest.substr(0, comma));
    if (v.empty()) throw ParseError(0, axis.key, "empty axis value");
    axis.values.emplace_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (!is_config_key(axis.key)) throw ParseError(0, axis.key, "unknown sweep parameter");
  return axis;
}

// Cartesian product, first axis slowest. Every point is validated before
// anything runs.
inline std::vector<NamedRun> sweep_points(const ProtocolConfig& base, const std::vector<SweepAxis>& axes) {
  base.validate();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!is_config_key(axes[i].key)) throw ParseError(0, axes[i].key, "unknown sweep parameter");
    if (axes[i].values.empty()) throw ParseError(0, axes[i].key, "axis has no values");
    for (std::size_t j = 0; j < i; ++j)
      if (axes[j].key == axes[i].key) throw ParseError(0, axes[i].key, "axis given twice");
  }
  if (axes.empty()) return {{"base", base}};
  std::vector<NamedRun> points;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    NamedRun run{"", base};
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::string& v = axes[a].values[idx[a]];
      apply_setting(run.cfg, axes[a].key, v);
      if (a) run.name += "__";
      run.name += axes[a].key + "=" + v;
    }
    if (auto bad = run.cfg.first_violation())
      throw ParseError(0, bad->first, bad->second + " (sweep point " + run.name + ")");
    points.push_back(std::move(run));
    std::size_t a = axes.size();
    while (a-- > 0) {
      if (++idx[a] < axes[a].values.size()) break;
      idx[a] = 0;
    }
    if (a == static_cast<std::size_t>(-1)) break;
  }
  return points;
}

inline std::vector<std::filesystem::path> sweep(const ProtocolConfig& base, const std::vector<SweepAxis>& axes,
                                                const std::filesystem::path& out, std::size_t threads) {
  const auto points = sweep_points(base, axes);
  auto results = run_batch(points, out, threads);
  std::vector<std::filesystem::path> files;
  for (const auto& r : results) files.push_back(r.csv);
  files.push_back(write_summary(results, out));
  return files;
}

}  // namespace qts
