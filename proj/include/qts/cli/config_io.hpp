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

// Flat `key = value` configuration documents.
//
//   kind = time_independent   # time_dependent | time_independent | bosonic
//   two_l = 20
//   theta = pi/4
//
// Real values accept decimal literals and the forms pi, k*pi, pi/m, k*pi/m.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "qts/errors.hpp"
#include "qts/protocols/config.hpp"

namespace qts {

// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_plain_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  const auto p = s.find("pi");
  if (p == std::string_view::npos) return parse_plain_double(s);
  double num = 1.0, den = 1.0;
  std::string_view head = trim(s.substr(0, p)), tail = trim(s.substr(p + 2));
  if (!head.empty()) {
    if (head.back() != '*') return std::nullopt;
    auto k = parse_plain_double(trim(head.substr(0, head.size() - 1)));
    if (!k) return std::nullopt;
    num = *k;
  }
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    auto m = parse_plain_double(trim(tail.substr(1)));
    if (!m || *m == 0.0) return std::nullopt;
    den = *m;
  }
  return num * std::numbers::pi / den;
}

inline std::optional<long long> parse_integer(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "kind",  "two_l", "beta",  "theta", "dt", "n_lowering_steps", "c_target", "iterations",
      "phi0",  "omega", "alpha", "D",     "sample_stride", "t_end", "iteration_method"};
  return keys;
}

inline bool is_config_key(std::string_view key) {
  for (const auto& k : config_keys())
    if (k == key) return true;
  return false;
}

inline ProtocolKind parse_kind(std::string_view v, std::size_t line = 0) {
  if (v == "time_dependent") return ProtocolKind::TimeDependent;
  if (v == "time_independent") return ProtocolKind::TimeIndependent;
  if (v == "bosonic") return ProtocolKind::Bosonic;
  throw ParseError(line, "kind", "expected time_dependent, time_independent or bosonic, got '" + std::string(v) + "'");
}

// Sets one field from its text form. Bath keys fill a partially specified
// bath block that parse_config later checks for completeness.
inline void apply_setting(ProtocolConfig& cfg, std::string_view key, std::string_view value, std::size_t line = 0) {
  const std::string k(key);
  auto real = [&]() {
    auto v = detail::parse_real(value);
    if (!v) throw ParseError(line, k, "expected a real number, got '" + std::string(value) + "'");
    return *v;
  };
  auto integer = [&](long long lo) {
    auto v = detail::parse_integer(value);
    if (!v) throw ParseError(line, k, "expected an integer, got '" + std::string(value) + "'");
    if (*v < lo || *v > 1000000000LL) throw ParseError(line, k, "value " + std::to_string(*v) + " is out of range");
    return *v;
  };
  auto bath = [&]() -> BathParams& {
    if (!cfg.bath) cfg.bath = BathParams{};
    return *cfg.bath;
  };
  if (k == "kind") cfg.kind = parse_kind(detail::trim(value), line);
  else if (k == "two_l") cfg.two_l = static_cast<int>(integer(1));
  else if (k == "beta") cfg.beta = real();
  else if (k == "theta") cfg.theta = real();
  else if (k == "dt") cfg.dt = real();
  else if (k == "n_lowering_steps") cfg.n_lowering_steps = static_cast<int>(integer(1));
  else if (k == "c_target") cfg.c_target = real();
  else if (k == "iterations") cfg.iterations = static_cast<int>(integer(1));
  else if (k == "phi0") cfg.phi0 = real();
  else if (k == "omega") bath().omega = real();
  else if (k == "alpha") bath().alpha = real();
  else if (k == "D") bath().dim = static_cast<std::size_t>(integer(2));
  else if (k == "sample_stride") cfg.sample_stride = static_cast<int>(integer(1));
  else if (k == "t_end") cfg.t_end = real();
  else if (k == "iteration_method") {
    const auto v = detail::trim(value);
    if (v == "flip_coupling") cfg.iteration_method = IterationMethod::FlipCoupling;
    else if (v == "alternate_qubit") cfg.iteration_method = IterationMethod::AlternateQubit;
    else throw ParseError(line, k, "expected flip_coupling or alternate_qubit, got '" + std::string(v) + "'");
  } else {
    throw ParseError(line, k, "unknown key");
  }
}

inline std::vector<std::string> required_keys(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::TimeDependent: return {"kind", "two_l", "beta"};
    case ProtocolKind::TimeIndependent: return {"kind", "two_l", "beta", "theta", "dt"};
    case ProtocolKind::Bosonic: return {"kind", "two_l", "beta", "dt", "omega", "alpha", "D"};
  }
  return {};
}

inline ProtocolConfig parse_config(std::string_view text) {
  std::map<std::string, std::pair<std::size_t, std::string>> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "", "empty key");
    if (!is_config_key(key)) throw ParseError(line_no, key, "unknown key");
    if (value.empty()) throw ParseError(line_no, key, "empty value");
    if (entries.count(key)) throw ParseError(line_no, key, "duplicate key (first set on line " +
                                                               std::to_string(entries[key].first) + ")");
    entries.emplace(key, std::make_pair(line_no, value));
  }

  const auto kind_it = entries.find("kind");
  if (kind_it == entries.end()) throw ParseError(0, "kind", "missing required key");
  ProtocolConfig cfg;
  cfg.kind = parse_kind(kind_it->second.second, kind_it->second.first);
  for (const auto& key : required_keys(cfg.kind))
    if (!entries.count(key)) throw ParseError(0, key, std::string("missing required key for ") + to_string(cfg.kind));

  for (const auto& [key, lv] : entries) apply_setting(cfg, key, lv.second, lv.first);

  if (cfg.bath)
    for (const char* k : {"omega", "alpha", "D"})
      if (!entries.count(k)) throw ParseError(0, k, "bath parameters omega, alpha and D must be given together");

  if (auto v = cfg.first_violation()) {
    const auto it = entries.find(v->first);
    throw ParseError(it == entries.end() ? 0 : it->second.first, v->first, v->second);
  }
  return cfg;
}

// Inverse of parse_config: parse_config(render_config(c)) == c.
inline std::string render_config(const ProtocolConfig& cfg) {
  const bool td = cfg.kind == ProtocolKind::TimeDependent;
  const bool ti = cfg.kind == ProtocolKind::TimeIndependent;
  std::string active, inactive;
  auto put = [](std::string& out, const char* key, const std::string& v) { out += std::string(key) + " = " + v + "\n"; };
  auto put_as = [&](bool used, const char* key, const std::string& v) { put(used ? active : inactive, key, v); };

  put(active, "kind", to_string(cfg.kind));
  put(active, "two_l", std::to_string(cfg.two_l));
  put(active, "beta", format_double(cfg.beta));
  put_as(!td, "theta", format_double(cfg.theta));
  put_as(!td, "dt", format_double(cfg.dt));
  put_as(td, "n_lowering_steps", std::to_string(cfg.n_lowering_steps));
  put_as(td, "c_target", format_double(cfg.c_target));
  put(active, "iterations", std::to_string(cfg.iterations));
  if (cfg.phi0) put(active, "phi0", format_double(*cfg.phi0));
  if (cfg.bath) {
    const bool bos = cfg.kind == ProtocolKind::Bosonic;
    put_as(bos, "omega", format_double(cfg.bath->omega));
    put_as(bos, "alpha", format_double(cfg.bath->alpha));
    put_as(bos, "D", std::to_string(cfg.bath->dim));
  }
  put(active, "sample_stride", std::to_string(cfg.sample_stride));
  if (cfg.t_end) put_as(cfg.kind == ProtocolKind::Bosonic, "t_end", format_double(*cfg.t_end));
  put_as(ti, "iteration_method", to_string(cfg.iteration_method));
  if (inactive.empty()) return active;
  return active + "# not used by " + to_string(cfg.kind) + "\n" + inactive;
}

}  // namespace qts
