// Copyright 2026 The fptc Authors
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

#ifndef FPTC_SCENARIO_FILE_HPP_
#define FPTC_SCENARIO_FILE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fptc/baselines.hpp"
#include "fptc/oracle.hpp"
#include "fptc/scenario.hpp"

namespace fptc {

// One method to run, with its parameters.
struct MethodSpec {
  // proposed, pf_vdj, pf_park_published, pf_park_altered, icp_max,
  // icp_acc_last, icp_acc_all, monte_carlo or noop.
  std::string method;
  PfConfig pf;
  IcpConfig icp;

  std::string PartitionLabel(const Scenario& scenario,
                             const McConfig& mc) const;
};

// Everything in a scenario file.
struct ScenarioConfig {
  Scenario scenario;
  std::vector<MethodSpec> methods;
  McConfig monte_carlo;
  int run_repeats = 10;     // timing repeats per method in `run`
  int bench_repeats = 1000;
  int bench_warmup = 100;
  std::string output_dir;   // relative paths resolve against the file
};

// Parses YAML text. `source` names the input in error messages. Throws
// ConfigError with the field path and, when known, the line number.
ScenarioConfig ParseScenarioConfig(const std::string& text,
                                   const std::string& source = "<string>");
ScenarioConfig LoadScenarioConfig(const std::filesystem::path& path);

}  // namespace fptc

#endif  // FPTC_SCENARIO_FILE_HPP_
