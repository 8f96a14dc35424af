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

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qts/cli/config_io.hpp"
#include "qts/errors.hpp"
#include "qts/protocols/trajectory.hpp"

namespace qts {

inline constexpr std::string_view kCsvHeader = "t,Lx,Ly,Lz,Sx,Sy,Sz,E_ref,S_ref,purity_ref,W_joint_cum,W_qubit_cum";
inline constexpr std::size_t kCsvColumns = 12;

inline constexpr std::string_view kSummaryHeader =
    "curve,iteration,W_joint,W_qubit,W_raise,dS_ref,E_ref_start,E_ref_end,S_ref_end,t_start,t_end";

inline std::string trajectory_csv(const Trajectory& traj) {
  std::string out(kCsvHeader);
  out += '\n';
  out.reserve(out.size() + traj.records.size() * 200);
  for (const Record& r : traj.records) {
    const double v[kCsvColumns] = {r.t,  r.lx,    r.ly,    r.lz,         r.sx,          r.sy,
                                   r.sz, r.e_ref, r.s_ref, r.purity_ref, r.w_joint_cum, r.w_qubit_cum};
    for (std::size_t i = 0; i < kCsvColumns; ++i) {
      if (i) out += ',';
      out += format_double(v[i]);
    }
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(path.string(), "cannot open for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw IoError(path.string(), "write failed");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_csv(const Trajectory& traj, const std::filesystem::path& path) {
  write_text_file(path, trajectory_csv(traj));
}

inline std::string summary_rows(const std::string& curve, const Trajectory& traj) {
  std::string out;
  for (const IterationSummary& s : traj.iterations) {
    const double v[] = {s.w_joint,     s.w_qubit,   s.w_raise,   s.delta_s_ref, s.e_ref_start,
                        s.e_ref_end,   s.s_ref_end, s.t_start,   s.t_end};
    out += curve + "," + std::to_string(s.iteration);
    for (double x : v) out += "," + format_double(x);
    out += '\n';
  }
  return out;
}

struct CsvCheck {
  std::size_t rows = 0;
};

// Reader-side schema check: exact header, 12 numeric columns per row,
// strictly increasing t, LF line endings.
inline CsvCheck check_csv_text(std::string_view text, const std::string& name = "csv") {
  if (text.find('\r') != std::string_view::npos) throw IoError(name, "contains CR characters");
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos || text.substr(0, nl) != kCsvHeader) throw IoError(name, "bad header");
  if (text.back() != '\n') throw IoError(name, "missing final newline");
  CsvCheck chk;
  double t_prev = 0.0;
  std::size_t pos = nl + 1;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    std::size_t col = 0, start = 0;
    double t = 0.0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      const auto v = detail::parse_plain_double(field);
      if (!v) throw IoError(name, "row " + std::to_string(chk.rows + 1) + ": bad number '" + std::string(field) + "'");
      if (col == 0) t = *v;
      ++col;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (col != kCsvColumns) throw IoError(name, "row " + std::to_string(chk.rows + 1) + ": expected 12 columns");
    if (chk.rows > 0 && !(t > t_prev)) throw IoError(name, "row " + std::to_string(chk.rows + 1) + ": t not increasing");
    t_prev = t;
    ++chk.rows;
  }
  return chk;
}

inline CsvCheck check_csv(const std::filesystem::path& path) { return check_csv_text(read_text_file(path), path.string()); }

}  // namespace qts
