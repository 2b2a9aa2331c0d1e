#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dilastab/drivers.hpp"
#include "dilastab/ecf.hpp"
#include "dilastab/params.hpp"
#include "dilastab/processes.hpp"

namespace dilastab {

enum class Spacing { Linear, Geometric };

struct GridSpec {
  double t_min = 1.0;
  double t_max = 1.0;
  std::size_t points = 1;
  Spacing spacing = Spacing::Geometric;
  // When non-empty, used verbatim instead of (t_min, t_max, points).
  std::vector<double> times;
};

// Everything a command needs to reproduce an ensemble.
//
// JSON form:
//   {"driver": {"kind": "gaussian", "variance": 1, "drift": 0},
//    "params": {"alpha": 1, "delta": 1},
//    "grid": {"t_min": 0.5, "t_max": 2, "points": 3, "spacing": "geometric"},
//    "paths": 1000, "seed": 7, "refine": 128, "tail_tol": 1e-4,
//    "transforms": ["lamperti"], "threads": 4}
// Every key is optional. Driver kinds: gaussian {variance, drift},
// symmetric_stable {index, scale}, compound_poisson {rate, jump: {kind:
// gaussian {mean, variance} | two_point {size}}}, gamma {shape, rate}.
struct RunConfig {
  LevyDriverSpec driver = GaussianDriver{};
  DilationParams params;
  GridSpec grid;
  std::size_t paths = 1;
  std::uint64_t seed = 0;
  Discretization disc;
  std::vector<TransformStep> transforms;
  unsigned threads = 1;
};

// All parsers throw Error(InvalidArgument) on malformed input.
LevyDriverSpec driver_from_json(const nlohmann::json& j);
nlohmann::json driver_to_json(const LevyDriverSpec& spec);
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);

// Rejects a chain containing lamperti on a linearly spaced grid.
void validate(const RunConfig& config);

std::vector<double> grid_times(const GridSpec& grid);

// Shortest representation that reads back to the same double.
std::string format_double(double x);

}  // namespace dilastab
