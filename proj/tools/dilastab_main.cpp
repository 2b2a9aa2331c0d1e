// dilastab: simulate dilatively stable processes, verify their scaling laws
// and print closed-form exponents.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dilastab/commands.hpp"
#include "dilastab/config.hpp"
#include "dilastab/error.hpp"

using nlohmann::json;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string driver;
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::size_t> points;
  std::optional<std::string> spacing;
  std::vector<double> times;
  std::optional<std::size_t> paths;
  std::optional<std::uint64_t> seed;
  std::optional<int> refine;
  std::optional<double> tail_tol;
  std::vector<std::string> transforms;
  std::optional<unsigned> threads;
  std::string output;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_grid) {
  cmd->add_option("--config", f.config_path, "JSON run configuration; flags override it");
  cmd->add_option("--driver", f.driver,
                  R"(driver as JSON, e.g. '{"kind":"gaussian","variance":1}')");
  cmd->add_option("--alpha", f.alpha, "alpha");
  cmd->add_option("--delta", f.delta, "delta");
  if (with_grid) {
    cmd->add_option("--t-min", f.t_min, "first grid time");
    cmd->add_option("--t-max", f.t_max, "last grid time");
    cmd->add_option("--points", f.points, "number of grid times");
    cmd->add_option("--spacing", f.spacing, "linear or geometric")
        ->check(CLI::IsMember({"linear", "geometric"}));
    cmd->add_option("--times", f.times, "explicit grid times")->delimiter(',');
  }
  cmd->add_option("--paths", f.paths, "number of paths");
  cmd->add_option("--seed", f.seed, "master seed (default: $DILASTAB_SEED or 0)");
  cmd->add_option("--refine", f.refine, "log-time steps per unit");
  cmd->add_option("--tail-tol", f.tail_tol, "tail truncation tolerance");
  cmd->add_option("--transform", f.transforms,
                  "transform step: lamperti, lamperti_inverse, time_stable, idt (repeatable)");
  cmd->add_option("--threads", f.threads, "worker threads");
  cmd->add_option("-o,--output", f.output, "output file (default stdout)");
}

json load_config(const CommonFlags& f) {
  json j = json::object();
  if (const char* env = std::getenv("DILASTAB_SEED")) {
    try {
      j["seed"] = std::stoull(env);
    } catch (const std::exception&) {
      throw dilastab::Error(dilastab::ErrorCode::InvalidArgument,
                            "DILASTAB_SEED is not an unsigned integer");
    }
  }
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) {
      throw dilastab::Error(dilastab::ErrorCode::InvalidArgument,
                            "cannot read config file " + f.config_path);
    }
    try {
      j.update(json::parse(in));
    } catch (const json::exception& e) {
      throw dilastab::Error(dilastab::ErrorCode::InvalidArgument,
                            std::string("bad config file: ") + e.what());
    }
  }
  if (!f.driver.empty()) {
    try {
      j["driver"] = json::parse(f.driver);
    } catch (const json::exception& e) {
      throw dilastab::Error(dilastab::ErrorCode::InvalidArgument,
                            std::string("bad --driver JSON: ") + e.what());
    }
  }
  if (f.alpha) j["params"]["alpha"] = *f.alpha;
  if (f.delta) j["params"]["delta"] = *f.delta;
  if (f.t_min) j["grid"]["t_min"] = *f.t_min;
  if (f.t_max) j["grid"]["t_max"] = *f.t_max;
  if (f.points) j["grid"]["points"] = *f.points;
  if (f.spacing) j["grid"]["spacing"] = *f.spacing;
  if (!f.times.empty()) j["grid"] = {{"times", f.times}};
  if (f.paths) j["paths"] = *f.paths;
  if (f.seed) j["seed"] = *f.seed;
  if (f.refine) j["refine"] = *f.refine;
  if (f.tail_tol) j["tail_tol"] = *f.tail_tol;
  if (!f.transforms.empty()) j["transforms"] = f.transforms;
  if (f.threads) j["threads"] = *f.threads;
  return j;
}

// Runs `command` against stdout or the --output file.
template <class Command>
int with_output(const std::string& path, Command&& command) {
  if (path.empty()) return command(std::cout);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return dilastab::kExitIo;
  }
  return command(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive dilatively stable processes: simulation and scaling checks"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  bool include_origin = false;
  auto* simulate = app.add_subcommand("simulate", "write sample paths as CSV path_id,t,value");
  add_common(simulate, sim_flags, true);
  simulate->add_flag("--include-origin", include_origin, "also write the X_0 = 0 row");

  CommonFlags ver_flags;
  std::string law = "dilative";
  dilastab::VerifySpec spec;
  std::optional<double> law_alpha;
  std::optional<double> law_delta;
  std::vector<double> test_times;
  std::vector<double> test_thetas;
  std::vector<std::vector<double>> test_pairs;
  auto* verify = app.add_subcommand("verify", "check a scaling law, write a JSON report");
  add_common(verify, ver_flags, false);
  verify->add_option("--law", law, "dilative, translative, time_stable or idt")
      ->check(CLI::IsMember({"dilative", "translative", "time_stable", "idt"}));
  verify->add_option("--T", spec.T, "shift or scale T");
  verify->add_option("--n", spec.n, "time-stable / idt factor n");
  verify->add_option("--law-alpha", law_alpha, "alpha given to the checker");
  verify->add_option("--law-delta", law_delta, "delta given to the checker");
  verify->add_option("--threshold", spec.threshold, "minimum pass fraction");
  verify->add_option("--r-steps", spec.check.r_steps, "phase unwrapping steps per ray");
  verify->add_option("--z", spec.check.z_threshold, "per-component |z| limit");
  verify->add_option("--test-times", test_times, "test times (crossed with --test-thetas)")
      ->delimiter(',');
  verify->add_option("--test-thetas", test_thetas, "test thetas")->delimiter(',');
  verify->add_option("--test-pair", test_pairs,
                     "increments point t1,t2,theta_level,theta_increment (repeatable)")
      ->delimiter(',')
      ->expected(4)
      ->allow_extra_args(false);

  std::string oracle_driver;
  std::optional<double> oracle_alpha;
  std::optional<double> oracle_delta;
  std::vector<double> oracle_times;
  std::vector<double> oracle_thetas;
  std::string oracle_output;
  auto* oracle = app.add_subcommand("oracle", "closed-form exponent as CSV t,theta,re,im");
  oracle->add_option("--driver", oracle_driver, "driver as JSON")->required();
  oracle->add_option("--alpha", oracle_alpha, "alpha")->required();
  oracle->add_option("--delta", oracle_delta, "delta")->required();
  oracle->add_option("--t", oracle_times, "times")->delimiter(',')->required();
  oracle->add_option("--theta", oracle_thetas, "thetas")->delimiter(',')->required();
  oracle->add_option("-o,--output", oracle_output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dilastab::kExitIo;
  }

  try {
    if (*simulate) {
      const auto config = dilastab::run_config_from_json(load_config(sim_flags));
      return with_output(sim_flags.output, [&](std::ostream& out) {
        return dilastab::cmd_simulate(config, include_origin, out, std::cerr);
      });
    }
    if (*verify) {
      const auto config = dilastab::run_config_from_json(load_config(ver_flags));
      static const std::map<std::string, dilastab::LawKind> kLaws = {
          {"dilative", dilastab::LawKind::Dilative},
          {"translative", dilastab::LawKind::Translative},
          {"time_stable", dilastab::LawKind::TimeStable},
          {"idt", dilastab::LawKind::Idt}};
      spec.law = kLaws.at(law);
      spec.law_alpha = law_alpha;
      spec.law_delta = law_delta;
      for (double t : test_times) {
        for (double th : test_thetas) spec.points.push_back(dilastab::TestPoint::single(t, th));
      }
      for (const auto& p : test_pairs) {
        spec.points.push_back(dilastab::TestPoint::increments(p[0], p[1], p[2], p[3]));
      }
      if (spec.points.empty()) spec.points = dilastab::default_test_points();
      return with_output(ver_flags.output, [&](std::ostream& out) {
        return dilastab::cmd_verify(config, spec, out, std::cerr);
      });
    }
    const auto driver = dilastab::driver_from_json(json::parse(oracle_driver));
    const dilastab::DilationParams params{*oracle_alpha, *oracle_delta};
    return with_output(oracle_output, [&](std::ostream& out) {
      return dilastab::cmd_oracle(driver, params, oracle_times, oracle_thetas, out, std::cerr);
    });
  } catch (const dilastab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dilastab::kExitIo;
  } catch (const json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << "\n";
    return dilastab::kExitIo;
  }
}
