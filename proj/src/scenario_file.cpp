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

#include "fptc/scenario_file.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "fptc/errors.hpp"

namespace fptc {
namespace {

// A YAML node together with its dotted path, for error reporting.
class Field {
 public:
  Field(YAML::Node node, std::string path)
      : node_(std::move(node)), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  int line() const {
    const YAML::Mark m = node_.Mark();
    return m.is_null() ? -1 : m.line + 1;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ConfigError(path_, message, line());
  }

  bool Has(const std::string& key) const {
    return node_.IsMap() && node_[key].IsDefined() && !node_[key].IsNull();
  }

  Field Get(const std::string& key) const {
    if (!node_.IsMap()) Fail("expected a mapping");
    if (!Has(key)) {
      throw ConfigError(Join(key), "missing required field", line());
    }
    return Field(node_[key], Join(key));
  }

  std::optional<Field> Find(const std::string& key) const {
    if (!Has(key)) return std::nullopt;
    return Field(node_[key], Join(key));
  }

  // Rejects keys outside `allowed`.
  void Expect(std::initializer_list<const char*> allowed) const {
    if (!node_.IsMap()) Fail("expected a mapping");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!ok.count(key)) {
        throw ConfigError(Join(key), "unknown field",
                          kv.first.Mark().line + 1);
      }
    }
  }

  std::vector<Field> Items() const {
    if (!node_.IsSequence()) Fail("expected a list");
    std::vector<Field> out;
    for (std::size_t i = 0; i < node_.size(); ++i) {
      out.emplace_back(node_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  double Double() const {
    double v = 0.0;
    if (!node_.IsScalar() || !YAML::convert<double>::decode(node_, v) ||
        !std::isfinite(v)) {
      Fail("expected a finite number");
    }
    return v;
  }

  double Positive() const {
    const double v = Double();
    if (!(v > 0.0)) Fail("must be positive");
    return v;
  }

  long long Integer() const {
    long long v = 0;
    if (!node_.IsScalar() || !YAML::convert<long long>::decode(node_, v)) {
      Fail("expected an integer");
    }
    return v;
  }

  bool Bool() const {
    bool v = false;
    if (!node_.IsScalar() || !YAML::convert<bool>::decode(node_, v)) {
      Fail("expected true or false");
    }
    return v;
  }

  std::string String() const {
    if (!node_.IsScalar()) Fail("expected a string");
    return node_.as<std::string>();
  }

  Vec2 Pair() const {
    if (!node_.IsSequence() || node_.size() != 2) Fail("expected [x, y]");
    const auto items = Items();
    return Vec2(items[0].Double(), items[1].Double());
  }

 private:
  std::string Join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  YAML::Node node_;
  std::string path_;
};

PiecewiseLinearPlan ParsePlan(const Field& f, double horizon) {
  f.Expect({"start_m", "stages", "extend_to_horizon"});
  const Point2 start = f.Get("start_m").Pair();
  const auto items = f.Get("stages").Items();
  if (items.empty()) f.Get("stages").Fail("needs at least one stage");

  std::vector<PlanStage> stages;
  Point2 at = start;
  for (const Field& s : items) {
    s.Expect({"velocity_mps", "duration_s", "to_m", "speed_mps"});
    PlanStage st;
    st.start = at;
    if (s.Has("to_m")) {
      if (s.Has("velocity_mps") || s.Has("duration_s")) {
        s.Fail("use either to_m/speed_mps or velocity_mps/duration_s");
      }
      const Point2 to = s.Get("to_m").Pair();
      const double speed = s.Get("speed_mps").Positive();
      const double dist = (to - at).norm();
      if (!(dist > 0.0)) s.Get("to_m").Fail("waypoint equals the stage start");
      st.duration = dist / speed;
      st.velocity = (to - at) / st.duration;
      at = to;
    } else {
      st.velocity = s.Get("velocity_mps").Pair();
      st.duration = s.Get("duration_s").Positive();
      at = at + st.velocity * st.duration;
    }
    stages.push_back(st);
  }
  if (auto ext = f.Find("extend_to_horizon"); ext && ext->Bool()) {
    double total = 0.0;
    for (const auto& st : stages) total += st.duration;
    if (horizon > total) stages.back().duration += horizon - total;
  }
  try {
    return PiecewiseLinearPlan(std::move(stages));
  } catch (const Error& e) {
    f.Fail(e.what());
  }
}

void ParseBoundary(const Field& f, Scenario* s) {
  f.Expect({"circle", "segments", "interior_point_m"});
  if (f.Has("circle") == f.Has("segments")) {
    f.Fail("give exactly one of circle or segments");
  }
  try {
    if (auto c = f.Find("circle")) {
      c->Expect({"center_m", "radius_m", "segments", "arc_start_deg",
                 "arc_end_deg"});
      const Point2 center = c->Get("center_m").Pair();
      const double radius = c->Get("radius_m").Positive();
      const long long n = c->Get("segments").Integer();
      if (n < 1) c->Get("segments").Fail("must be at least 1");
      constexpr double kDeg = std::numbers::pi / 180.0;
      Arc arc{-std::numbers::pi, std::numbers::pi};
      if (auto a = c->Find("arc_start_deg")) arc.start_rad = a->Double() * kDeg;
      if (auto a = c->Find("arc_end_deg")) arc.end_rad = a->Double() * kDeg;
      s->boundary =
          ApproximateCircle(center, radius, static_cast<int>(n), arc);
      s->disk = Disk{center, radius};
      return;
    }
    const Point2 interior = f.Get("interior_point_m").Pair();
    std::vector<Segment> segs;
    for (const Field& item : f.Get("segments").Items()) {
      item.Expect({"p1_m", "p2_m"});
      segs.push_back({item.Get("p1_m").Pair(), item.Get("p2_m").Pair()});
    }
    if (segs.empty()) f.Get("segments").Fail("needs at least one segment");
    s->boundary = ConflictBoundary::FromInteriorPoint(std::move(segs), interior);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    f.Fail(e.what());
  }
}

MethodSpec ParseMethod(const Field& f) {
  f.Expect({"method", "intervals", "interval_m", "rectangles",
            "accumulation_period_s"});
  MethodSpec m;
  m.method = f.Get("method").String();
  static const std::set<std::string> kKnown = {
      "proposed",     "pf_vdj",        "pf_park_published",
      "pf_park_altered", "icp_max",    "icp_acc_last",
      "icp_acc_all",  "monte_carlo",   "noop"};
  if (!kKnown.count(m.method)) f.Get("method").Fail("unknown method");
  const bool pf = m.method.rfind("pf_", 0) == 0;
  const bool icp = m.method.rfind("icp_", 0) == 0;
  if (pf) {
    if (f.Has("intervals") == f.Has("interval_m")) {
      f.Fail("probability flow needs exactly one of intervals or interval_m");
    }
    if (auto v = f.Find("intervals")) {
      const long long n = v->Integer();
      if (n < 1) v->Fail("must be at least 1");
      m.pf.intervals = static_cast<int>(n);
    }
    if (auto v = f.Find("interval_m")) m.pf.interval_length_m = v->Positive();
  } else if (f.Has("intervals") || f.Has("interval_m")) {
    f.Fail("partition fields apply to probability-flow methods only");
  }
  if (icp) {
    if (auto v = f.Find("rectangles")) {
      const long long n = v->Integer();
      if (n < 1) v->Fail("must be at least 1");
      m.icp.n_rectangles = static_cast<int>(n);
    }
    if (auto v = f.Find("accumulation_period_s")) {
      m.icp.accumulation_period = v->Positive();
    }
  } else if (f.Has("rectangles") || f.Has("accumulation_period_s")) {
    f.Fail("rectangle fields apply to icp methods only");
  }
  return m;
}

int ParseCount(const Field& f, int min) {
  const long long v = f.Integer();
  if (v < min || v > 100'000'000) {
    f.Fail("must be an integer >= " + std::to_string(min));
  }
  return static_cast<int>(v);
}

}  // namespace

std::string MethodSpec::PartitionLabel(const Scenario& scenario,
                                       const McConfig& mc) const {
  if (method == "proposed") {
    return std::to_string(scenario.boundary.size()) + " segments";
  }
  if (method.rfind("pf_", 0) == 0) return pf.Label();
  if (method.rfind("icp_", 0) == 0) return std::to_string(icp.n_rectangles);
  if (method == "monte_carlo") return std::to_string(mc.n_samples) + " samples";
  return "-";
}

ScenarioConfig ParseScenarioConfig(const std::string& text,
                                   const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.msg, e.mark.line + 1);
  }
  const Field f(root, "");
  if (!root.IsMap()) throw ConfigError(source, "expected a mapping at the top");
  f.Expect({"name", "model", "plan", "boundary", "horizon_s", "dt_s",
            "methods", "monte_carlo", "timing", "output"});

  ScenarioConfig cfg;
  Scenario& s = cfg.scenario;
  s.name = f.Has("name") ? f.Get("name").String() : source;
  s.horizon = f.Get("horizon_s").Positive();
  s.dt = f.Get("dt_s").Positive();
  if (s.dt > s.horizon) f.Get("dt_s").Fail("must not exceed horizon_s");

  const Field model = f.Get("model");
  model.Expect({"kind", "diffusion_diag_m2ps3", "gains"});
  const std::string kind = model.Get("kind").String();
  if (kind != "open_loop" && kind != "closed_loop") {
    model.Get("kind").Fail("expected open_loop or closed_loop");
  }
  const Vec2 q = model.Get("diffusion_diag_m2ps3").Pair();
  if (q.x() < 0.0 || q.y() < 0.0) {
    model.Get("diffusion_diag_m2ps3").Fail("entries must be non-negative");
  }
  s.diffusion = q.asDiagonal();
  if (kind == "closed_loop") {
    const Field g = model.Get("gains");
    g.Expect({"position_per_s2", "velocity_per_s"});
    FeedbackGains gains{g.Get("position_per_s2").Pair(),
                        g.Get("velocity_per_s").Pair()};
    if ((gains.position.array() <= 0.0).any()) {
      g.Get("position_per_s2").Fail("gains must be positive");
    }
    if ((gains.velocity.array() <= 0.0).any()) {
      g.Get("velocity_per_s").Fail("gains must be positive");
    }
    s.gains = gains;
  } else if (model.Has("gains")) {
    model.Get("gains").Fail("gains apply to closed_loop models only");
  }

  s.plan = ParsePlan(f.Get("plan"), s.horizon);
  if (s.horizon > s.plan.duration() + 1e-9) {
    f.Get("horizon_s").Fail("exceeds the plan duration; set "
                            "plan.extend_to_horizon or lengthen the plan");
  }
  ParseBoundary(f.Get("boundary"), &s);

  for (const Field& m : f.Get("methods").Items()) {
    cfg.methods.push_back(ParseMethod(m));
  }

  cfg.monte_carlo.dt = s.dt;
  if (auto mc = f.Find("monte_carlo")) {
    mc->Expect({"samples", "seed", "dt_s", "transient", "exact_region"});
    if (auto v = mc->Find("samples")) {
      cfg.monte_carlo.n_samples = static_cast<std::size_t>(ParseCount(*v, 1));
    }
    if (auto v = mc->Find("seed")) {
      const long long seed = v->Integer();
      if (seed < 0) v->Fail("must be non-negative");
      cfg.monte_carlo.seed = static_cast<std::uint64_t>(seed);
    }
    if (auto v = mc->Find("dt_s")) cfg.monte_carlo.dt = v->Positive();
    if (auto v = mc->Find("transient")) cfg.monte_carlo.transient = v->Bool();
    if (auto v = mc->Find("exact_region")) {
      cfg.monte_carlo.exact_region = v->Bool();
    }
  }
  if (auto t = f.Find("timing")) {
    t->Expect({"run_repeats", "bench_repeats", "bench_warmup"});
    if (auto v = t->Find("run_repeats")) cfg.run_repeats = ParseCount(*v, 1);
    if (auto v = t->Find("bench_repeats")) cfg.bench_repeats = ParseCount(*v, 1);
    if (auto v = t->Find("bench_warmup")) cfg.bench_warmup = ParseCount(*v, 0);
  }
  if (auto o = f.Find("output")) {
    o->Expect({"dir"});
    cfg.output_dir = o->Get("dir").String();
  }
  try {
    s.Validate();
  } catch (const Error& e) {
    throw ConfigError(source, e.what());
  }
  return cfg;
}

ScenarioConfig LoadScenarioConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioConfig cfg = ParseScenarioConfig(buf.str(), path.string());
  if (!cfg.output_dir.empty() &&
      std::filesystem::path(cfg.output_dir).is_relative()) {
    cfg.output_dir = (path.parent_path() / cfg.output_dir).string();
  }
  return cfg;
}

}  // namespace fptc
