#include "dilastab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <string_view>

#include "dilastab/error.hpp"

namespace dilastab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, what);
}

void require_object(const json& j, std::string_view where,
                    std::initializer_list<std::string_view> keys) {
  if (!j.is_object()) fail(std::string(where) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
      fail("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(std::string("bad value for '") + key + "'");
  }
}

}  // namespace

LevyDriverSpec driver_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail("driver needs a 'kind'");
  const std::string kind = get_or<std::string>(j, "kind", "");
  LevyDriverSpec spec;
  if (kind == "gaussian") {
    require_object(j, "gaussian driver", {"kind", "variance", "drift"});
    spec = GaussianDriver{get_or(j, "variance", 1.0), get_or(j, "drift", 0.0)};
  } else if (kind == "symmetric_stable") {
    require_object(j, "symmetric_stable driver", {"kind", "index", "scale"});
    spec = SymmetricStableDriver{get_or(j, "index", 2.0), get_or(j, "scale", 1.0)};
  } else if (kind == "compound_poisson") {
    require_object(j, "compound_poisson driver", {"kind", "rate", "jump"});
    const json jump = get_or(j, "jump", json{{"kind", "gaussian"}});
    const std::string jump_kind = get_or<std::string>(jump, "kind", "gaussian");
    JumpLaw law;
    if (jump_kind == "gaussian") {
      require_object(jump, "gaussian jump", {"kind", "mean", "variance"});
      law = GaussianJumps{get_or(jump, "mean", 0.0), get_or(jump, "variance", 1.0)};
    } else if (jump_kind == "two_point") {
      require_object(jump, "two_point jump", {"kind", "size"});
      law = TwoPointJumps{get_or(jump, "size", 1.0)};
    } else {
      fail("unknown jump kind '" + jump_kind + "'");
    }
    spec = CompoundPoissonDriver{get_or(j, "rate", 1.0), law};
  } else if (kind == "gamma") {
    require_object(j, "gamma driver", {"kind", "shape", "rate"});
    spec = GammaDriver{get_or(j, "shape", 1.0), get_or(j, "rate", 1.0)};
  } else {
    fail("unknown driver kind '" + kind + "'");
  }
  validate(spec);
  return spec;
}

json driver_to_json(const LevyDriverSpec& spec) {
  json j;
  j["kind"] = kind_name(spec);
  if (const auto* g = std::get_if<GaussianDriver>(&spec)) {
    j["variance"] = g->variance;
    j["drift"] = g->drift;
  } else if (const auto* s = std::get_if<SymmetricStableDriver>(&spec)) {
    j["index"] = s->index;
    j["scale"] = s->scale;
  } else if (const auto* cp = std::get_if<CompoundPoissonDriver>(&spec)) {
    j["rate"] = cp->rate;
    if (const auto* gj = std::get_if<GaussianJumps>(&cp->jumps)) {
      j["jump"] = {{"kind", "gaussian"}, {"mean", gj->mean}, {"variance", gj->variance}};
    } else {
      j["jump"] = {{"kind", "two_point"}, {"size", std::get<TwoPointJumps>(cp->jumps).size}};
    }
  } else if (const auto* ga = std::get_if<GammaDriver>(&spec)) {
    j["shape"] = ga->shape;
    j["rate"] = ga->rate;
  }
  return j;
}

RunConfig run_config_from_json(const json& j) {
  require_object(j, "config",
                 {"driver", "params", "grid", "paths", "seed", "refine", "tail_tol",
                  "transforms", "threads"});
  RunConfig c;
  if (j.contains("driver")) c.driver = driver_from_json(j["driver"]);
  if (j.contains("params")) {
    const json& p = j["params"];
    require_object(p, "params", {"alpha", "delta"});
    c.params.alpha = get_or(p, "alpha", c.params.alpha);
    c.params.delta = get_or(p, "delta", c.params.delta);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    require_object(g, "grid", {"t_min", "t_max", "points", "spacing", "times"});
    c.grid.t_min = get_or(g, "t_min", c.grid.t_min);
    c.grid.t_max = get_or(g, "t_max", c.grid.t_max);
    c.grid.points = get_or(g, "points", c.grid.points);
    const std::string spacing = get_or<std::string>(g, "spacing", "geometric");
    if (spacing == "linear") {
      c.grid.spacing = Spacing::Linear;
    } else if (spacing == "geometric") {
      c.grid.spacing = Spacing::Geometric;
    } else {
      fail("grid spacing must be 'linear' or 'geometric'");
    }
    c.grid.times = get_or(g, "times", c.grid.times);
  }
  c.paths = get_or(j, "paths", c.paths);
  c.seed = get_or(j, "seed", c.seed);
  c.disc.refine = get_or(j, "refine", c.disc.refine);
  c.disc.tail_tol = get_or(j, "tail_tol", c.disc.tail_tol);
  c.threads = get_or(j, "threads", c.threads);
  for (const auto& name : get_or(j, "transforms", std::vector<std::string>{})) {
    const auto step = parse_transform(name);
    if (!step) fail("unknown transform '" + name + "'");
    c.transforms.push_back(*step);
  }
  validate(c);
  return c;
}

json run_config_to_json(const RunConfig& c) {
  json grid;
  if (c.grid.times.empty()) {
    grid = {{"t_min", c.grid.t_min},
            {"t_max", c.grid.t_max},
            {"points", c.grid.points},
            {"spacing", c.grid.spacing == Spacing::Linear ? "linear" : "geometric"}};
  } else {
    grid = {{"times", c.grid.times}};
  }
  std::vector<std::string> transforms;
  for (TransformStep s : c.transforms) transforms.emplace_back(to_string(s));
  return {{"driver", driver_to_json(c.driver)},
          {"params", {{"alpha", c.params.alpha}, {"delta", c.params.delta}}},
          {"grid", grid},
          {"paths", c.paths},
          {"seed", c.seed},
          {"refine", c.disc.refine},
          {"tail_tol", c.disc.tail_tol},
          {"transforms", transforms},
          {"threads", c.threads}};
}

void validate(const RunConfig& c) {
  validate(c.driver);
  if (c.paths < 1) fail("paths must be >= 1");
  if (c.disc.refine < 1) fail("refine must be >= 1");
  if (!(c.disc.tail_tol > 0.0)) fail("tail_tol must be > 0");
  if (c.threads < 1) fail("threads must be >= 1");
  if (c.grid.times.empty()) {
    if (c.grid.points < 1) fail("grid needs at least one point");
    if (!(c.grid.t_min > 0.0) || !(c.grid.t_max >= c.grid.t_min)) {
      fail("grid needs 0 < t_min <= t_max");
    }
    if (c.grid.points > 1 && !(c.grid.t_max > c.grid.t_min)) {
      fail("grid with several points needs t_min < t_max");
    }
    const bool lamperti =
        std::find(c.transforms.begin(), c.transforms.end(), TransformStep::Lamperti) !=
        c.transforms.end();
    if (lamperti && c.grid.spacing != Spacing::Geometric) {
      fail("a transform chain with lamperti needs geometric grid spacing");
    }
  } else {
    for (double t : c.grid.times) {
      if (!(t > 0.0) || !std::isfinite(t)) fail("grid times must be finite and > 0");
    }
  }
}

std::vector<double> grid_times(const GridSpec& g) {
  if (!g.times.empty()) {
    const TimeGrid grid = TimeGrid::from_unsorted(g.times);
    return {grid.points().begin(), grid.points().end()};
  }
  const TimeGrid grid = g.spacing == Spacing::Linear
                            ? TimeGrid::linear(g.t_min, g.t_max, g.points)
                            : TimeGrid::geometric(g.t_min, g.t_max, g.points);
  return {grid.points().begin(), grid.points().end()};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace dilastab
