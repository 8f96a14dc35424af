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

// qts: command-line driver.
//
//   qts run    --config <file> --out <dir>
//   qts preset --figure <id>   --out <dir>
//   qts sweep  --config <file> --axis <param>=<v1,v2,...> [--axis ...] --out <dir>
//   qts check
//
// Exit status: 0 success, 2 validation error, 1 runtime failure.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "qts/qts.hpp"
#include "qts/selfcheck.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 1;

qts::ProtocolConfig load_config(const std::string& path) { return qts::parse_config(qts::read_text_file(path)); }

void report(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work extraction with a finite quantum reference frame"};
  app.require_subcommand(1);

  std::string config, out, figure;
  std::vector<std::string> axes;

  auto* run = app.add_subcommand("run", "Run one configuration and write its trajectory CSV");
  run->add_option("--config", config, "Configuration file")->required();
  run->add_option("--out", out, "Output directory")->required();

  auto* preset = app.add_subcommand("preset", "Run the configurations behind one figure");
  preset->add_option("--figure", figure, "Figure id: fig3 ... fig10")->required();
  preset->add_option("--out", out, "Output directory")->required();

  auto* sw = app.add_subcommand("sweep", "Run the Cartesian product of parameter axes");
  sw->add_option("--config", config, "Base configuration file")->required();
  sw->add_option("--axis", axes, "param=v1,v2,... (repeatable)");
  sw->add_option("--out", out, "Output directory")->required();

  app.add_subcommand("check", "Run the invariant self-tests");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) {
      const auto cfg = load_config(config);
      const auto files = qts::run_batch({{"trajectory", cfg}}, out, 1);
      std::vector<std::filesystem::path> paths{files.front().csv, qts::write_summary(files, out)};
      report(paths);
    } else if (*preset) {
      report(qts::run_preset(figure, out, qts::thread_budget()));
    } else if (*sw) {
      const auto base = load_config(config);
      std::vector<qts::SweepAxis> parsed;
      for (const auto& a : axes) parsed.push_back(qts::parse_axis(a));
      report(qts::sweep(base, parsed, out, qts::thread_budget()));
    } else {
      return qts::run_self_checks(std::cout) ? 0 : kExitRuntime;
    }
  } catch (const qts::InvalidArgument& e) {
    std::cerr << "qts: " << e.what() << "\n";
    return kExitValidation;
  } catch (const qts::IoError& e) {
    std::cerr << "qts: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "qts: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
