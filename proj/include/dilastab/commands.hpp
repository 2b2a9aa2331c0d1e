#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "json.hpp"

#include "dilastab/config.hpp"
#include "dilastab/ecf.hpp"

namespace dilastab {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitInadmissible = 2,
  kExitVerifyFailed = 3,
};

struct VerifySpec {
  LawKind law = LawKind::Dilative;
  double T = 2.0;
  double n = 2.0;
  // Exponents handed to the checker; default to the simulated ones.
  std::optional<double> law_alpha;
  std::optional<double> law_delta;
  // Points in the time domain of the final path role.
  std::vector<TestPoint> points;
  double threshold = 0.99;
  CheckOptions check;
};

// Test points used when none are given: t in {0.5, 1}, theta in
// {0.25, 0.5, 1} and one increments point.
std::vector<TestPoint> default_test_points();

ScalingLaw make_law(const VerifySpec& spec, const DilationParams& simulated);

// Output times of the X simulation needed so that every time the law asks
// for exists on the transformed grid.
std::vector<double> required_simulation_times(const VerifySpec& spec, const ScalingLaw& law,
                                              const std::vector<TransformStep>& chain,
                                              double delta);

nlohmann::json report_to_json(const ScalingReport& report);

// CSV `path_id,t,value`. The X origin row is written only when asked for.
void write_paths_csv(const PathEnsemble& ensemble, bool include_origin, std::ostream& out);

// Commands write results to `out`, diagnostics to `err`, and return an
// ExitCode.
int cmd_simulate(const RunConfig& config, bool include_origin, std::ostream& out,
                 std::ostream& err);
int cmd_verify(const RunConfig& config, const VerifySpec& spec, std::ostream& out,
               std::ostream& err);
int cmd_oracle(const LevyDriverSpec& driver, const DilationParams& params,
               std::span<const double> times, std::span<const double> thetas,
               std::ostream& out, std::ostream& err);

}  // namespace dilastab
