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

#include "fptc/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fptc/baselines.hpp"
#include "fptc/conflict.hpp"
#include "fptc/errors.hpp"

namespace fptc {
namespace {

using Clock = std::chrono::steady_clock;

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Quotes a CSV field when needed.
std::string Csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

MethodResult Dispatch(const ScenarioConfig& config, const MethodSpec& spec,
                      const McConfig& mc) {
  const Scenario& s = config.scenario;
  const std::string& m = spec.method;
  if (m == "proposed") return BoundaryConflictProbability(s.Query());
  if (m == "pf_vdj") return PfVdj(s, spec.pf);
  if (m == "pf_park_published") {
    return PfPark(s, spec.pf, ParkVariant::kPublished);
  }
  if (m == "pf_park_altered") return PfPark(s, spec.pf, ParkVariant::kAltered);
  if (m == "icp_max") return IcpToConflict(s, spec.icp, IcpMode::kMax);
  if (m == "icp_acc_last") return IcpToConflict(s, spec.icp, IcpMode::kAccLast);
  if (m == "icp_acc_all") return IcpToConflict(s, spec.icp, IcpMode::kAccAll);
  if (m == "monte_carlo") {
    const McEstimate e = Estimate(s, mc);
    MethodResult r;
    r.probability = e.probability;
    r.runtime_s = e.runtime_s;
    r.per_segment.push_back({0, e.probability, kDiagNone});
    return r;
  }
  if (m == "noop") return {};
  throw InvalidArgument("unknown method '" + m + "'");
}

}  // namespace

MethodResult RunMethod(const ScenarioConfig& config, const MethodSpec& spec,
                       const McConfig& mc) {
  try {
    MethodResult r = Dispatch(config, spec, mc);
    r.method = spec.method;
    r.partition = spec.PartitionLabel(config.scenario, mc);
    return r;
  } catch (const MethodError&) {
    throw;
  } catch (const std::exception& e) {
    throw MethodError(spec.method, e.what());
  }
}

ResultTable Run(const ScenarioConfig& config, const RunOptions& options) {
  McConfig mc = config.monte_carlo;
  if (options.seed) mc.seed = *options.seed;
  if (options.samples) mc.n_samples = *options.samples;
  mc.threads = options.threads;
  const int repeats = options.repeats.value_or(config.run_repeats);

  ResultTable table;
  table.scenario = config.scenario.name;
  for (const MethodSpec& spec : config.methods) {
    ResultRow row;
    if (spec.method == "monte_carlo") {
      try {
        row.mc = Estimate(config.scenario, mc);
      } catch (const std::exception& e) {
        throw MethodError(spec.method, e.what());
      }
      row.runtime_ms = row.mc->runtime_s * 1e3;
      row.detail.method = spec.method;
      row.detail.partition = spec.PartitionLabel(config.scenario, mc);
      row.detail.probability = row.mc->probability;
      row.detail.runtime_s = row.mc->runtime_s;
      row.detail.per_segment.push_back({0, row.mc->probability, kDiagNone});
    } else {
      double total_ms = 0.0;
      for (int r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        row.detail = RunMethod(config, spec, mc);
        total_ms +=
            std::chrono::duration<double, std::milli>(Clock::now() - t0)
                .count();
      }
      row.runtime_ms = total_ms / repeats;
    }
    row.method = row.detail.method;
    row.partition = row.detail.partition;
    row.probability = row.detail.probability;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string ResultsCsv(const ResultTable& table) {
  std::ostringstream os;
  os << "method,partition,runtime_ms,probability_pct\n";
  for (const auto& r : table.rows) {
    os << Csv(r.method) << ',' << Csv(r.partition) << ','
       << Fixed(r.runtime_ms, 4) << ',' << Fixed(100.0 * r.probability, 3)
       << '\n';
  }
  return os.str();
}

void WriteResults(const ResultTable& table, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "results.csv");
    out << ResultsCsv(table);
  }
  {
    std::ofstream out(dir / "segments.csv");
    out << "method,partition,segment,probability_pct,diagnostics\n";
    for (const auto& r : table.rows) {
      for (const auto& s : r.detail.per_segment) {
        out << Csv(r.method) << ',' << Csv(r.partition) << ',' << s.index
            << ',' << Fixed(100.0 * s.probability, 6) << ','
            << DiagnosticString(s.diagnostics) << '\n';
      }
    }
  }
  for (const auto& r : table.rows) {
    if (!r.mc) continue;
    std::ofstream out(dir / "mc.csv");
    out << "samples,hits,probability_pct,std_error_pct\n"
        << r.mc->n_samples << ',' << r.mc->hits << ','
        << Fixed(100.0 * r.mc->probability, 4) << ','
        << Fixed(100.0 * r.mc->std_error, 4) << '\n';
    break;
  }
}

std::vector<TimingSummary> Bench(const ScenarioConfig& config, int repeats,
                                 int warmup) {
  if (repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (warmup < 0) throw InvalidArgument("warmup must be non-negative");
  std::vector<TimingSummary> out;
  for (const MethodSpec& spec : config.methods) {
    if (spec.method == "monte_carlo") continue;
    for (int i = 0; i < warmup; ++i) RunMethod(config, spec, config.monte_carlo);
    std::vector<double> ms(repeats);
    for (int i = 0; i < repeats; ++i) {
      const auto t0 = Clock::now();
      const MethodResult r = RunMethod(config, spec, config.monte_carlo);
      ms[i] =
          std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      (void)r;
    }
    TimingSummary t;
    t.method = spec.method;
    t.partition = spec.PartitionLabel(config.scenario, config.monte_carlo);
    t.repeats = repeats;
    for (double v : ms) t.mean_ms += v;
    t.mean_ms /= repeats;
    for (double v : ms) t.std_ms += (v - t.mean_ms) * (v - t.mean_ms);
    t.std_ms = repeats > 1 ? std::sqrt(t.std_ms / (repeats - 1)) : 0.0;
    out.push_back(t);
  }
  return out;
}

void EmitPlotData(const Scenario& scenario, std::size_t n_paths,
                  const McConfig& mc, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const double dt = mc.dt > 0.0 ? mc.dt : scenario.dt;
  const std::vector<double> grid = TimeGrid(scenario.horizon, dt);
  {
    std::ofstream out(dir / "nominal.txt");
    out << "# t_s x_m y_m\n";
    for (double t : grid) {
      const Point2 p =
          scenario.plan.Sample(std::min(t, scenario.plan.duration())).position;
      out << Fixed(t, 6) << ' ' << Fixed(p.x(), 9) << ' ' << Fixed(p.y(), 9)
          << '\n';
    }
  }
  {
    std::ofstream out(dir / "boundary.txt");
    out << "# x1_m y1_m x2_m y2_m nx ny\n";
    for (std::size_t i = 0; i < scenario.boundary.size(); ++i) {
      const Segment& s = scenario.boundary.segment(i);
      const Vec2& n = scenario.boundary.normal(i);
      out << Fixed(s.p1.x(), 9) << ' ' << Fixed(s.p1.y(), 9) << ' '
          << Fixed(s.p2.x(), 9) << ' ' << Fixed(s.p2.y(), 9) << ' '
          << Fixed(n.x(), 12) << ' ' << Fixed(n.y(), 12) << '\n';
    }
  }
  std::filesystem::remove(dir / "samples.txt");
  if (n_paths == 0) return;
  std::ofstream out(dir / "samples.txt");
  out << "# path t_s x_m y_m\n";
  for (std::size_t i = 0; i < n_paths; ++i) {
    const SampledPath p = SampleTrajectory(scenario, mc, i);
    for (std::size_t k = 0; k < p.t.size(); ++k) {
      out << i << ' ' << Fixed(p.t[k], 6) << ' ' << Fixed(p.position[k].x(), 9)
          << ' ' << Fixed(p.position[k].y(), 9) << '\n';
    }
  }
}

}  // namespace fptc
