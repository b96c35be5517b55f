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

// Command-line front end: run scenarios, time methods, sample Monte Carlo
// estimates and dump plot data.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fptc/errors.hpp"
#include "fptc/parallel.hpp"
#include "fptc/runner.hpp"
#include "fptc/scenario_file.hpp"

namespace {

int DoRun(const std::string& scenario, const std::string& out,
          std::optional<std::uint64_t> seed) {
  const fptc::ScenarioConfig cfg = fptc::LoadScenarioConfig(scenario);
  fptc::RunOptions opts;
  opts.seed = seed;
  opts.threads = fptc::ThreadCountFromEnv();
  const fptc::ResultTable table = fptc::Run(cfg, opts);
  std::cout << fptc::ResultsCsv(table);
  const std::string dir = out.empty() ? cfg.output_dir : out;
  if (!dir.empty()) {
    fptc::WriteResults(table, dir);
    std::cerr << "wrote " << dir << "/results.csv\n";
  }
  return 0;
}

int DoBench(const std::string& scenario, std::optional<int> repeats,
            std::optional<int> warmup) {
  const fptc::ScenarioConfig cfg = fptc::LoadScenarioConfig(scenario);
  const auto rows = fptc::Bench(cfg, repeats.value_or(cfg.bench_repeats),
                                warmup.value_or(cfg.bench_warmup));
  std::cout << "method,partition,repeats,mean_ms,std_ms\n";
  for (const auto& r : rows) {
    std::printf("%s,%s,%d,%.4f,%.4f\n", r.method.c_str(), r.partition.c_str(),
                r.repeats, r.mean_ms, r.std_ms);
  }
  return 0;
}

int DoPlotData(const std::string& scenario, std::size_t paths,
               const std::string& out, std::optional<std::uint64_t> seed) {
  const fptc::ScenarioConfig cfg = fptc::LoadScenarioConfig(scenario);
  fptc::McConfig mc = cfg.monte_carlo;
  if (seed) mc.seed = *seed;
  fptc::EmitPlotData(cfg.scenario, paths, mc, out);
  std::cerr << "wrote plot data to " << out << "\n";
  return 0;
}

int DoMc(const std::string& scenario, std::optional<std::size_t> samples,
         std::optional<std::uint64_t> seed) {
  const fptc::ScenarioConfig cfg = fptc::LoadScenarioConfig(scenario);
  fptc::McConfig mc = cfg.monte_carlo;
  if (samples) mc.n_samples = *samples;
  if (seed) mc.seed = *seed;
  mc.threads = fptc::ThreadCountFromEnv();
  const fptc::McEstimate e = fptc::Estimate(cfg.scenario, mc);
  std::cout << "samples,hits,probability_pct,std_error_pct,runtime_s\n";
  std::printf("%zu,%zu,%.4f,%.4f,%.3f\n", e.n_samples, e.hits,
              100.0 * e.probability, 100.0 * e.std_error, e.runtime_s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-passage-time conflict prediction toolkit"};
  app.require_subcommand(1);
  app.footer(std::string("Environment: ") + fptc::kThreadsEnv +
             "=N sets the worker count (0 = one per hardware thread).");

  std::string scenario, out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<int> repeats, warmup;
  std::size_t paths = 0;

  auto* run = app.add_subcommand("run", "Run every method in a scenario");
  run->add_option("--scenario", scenario, "Scenario file")->required();
  run->add_option("--out", out, "Output directory (default: from the file)");
  run->add_option("--seed", seed, "Monte Carlo seed override");

  auto* bench = app.add_subcommand("bench", "Time each method");
  bench->add_option("--scenario", scenario, "Scenario file")->required();
  bench->add_option("--repeats", repeats, "Timed calls per method")
      ->check(CLI::PositiveNumber);
  bench->add_option("--warmup", warmup, "Discarded calls per method")
      ->check(CLI::NonNegativeNumber);

  auto* plot = app.add_subcommand("plot-data", "Write plot data files");
  plot->add_option("--scenario", scenario, "Scenario file")->required();
  plot->add_option("--paths", paths, "Number of sampled paths");
  plot->add_option("--out", out, "Output directory")->required();
  plot->add_option("--seed", seed, "Sampling seed override");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate only");
  mc->add_option("--scenario", scenario, "Scenario file")->required();
  mc->add_option("--samples", samples, "Number of paths")
      ->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed, "Seed");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return DoRun(scenario, out, seed);
    if (*bench) return DoBench(scenario, repeats, warmup);
    if (*plot) return DoPlotData(scenario, paths, out, seed);
    if (*mc) return DoMc(scenario, samples, seed);
  } catch (const fptc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
