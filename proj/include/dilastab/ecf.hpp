#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dilastab/drivers.hpp"
#include "dilastab/params.hpp"
#include "dilastab/path.hpp"
#include "dilastab/processes.hpp"

namespace dilastab {

// Path-space maps applied after simulation. Lamperti takes X to V,
// LampertiInverse takes V back to X, TimeStable takes V to Z and Idt takes V
// to D.
enum class TransformStep { Lamperti, LampertiInverse, TimeStable, Idt };

std::string_view to_string(TransformStep step);
std::optional<TransformStep> parse_transform(std::string_view name);

struct EnsembleConfig {
  LevyDriverSpec driver = GaussianDriver{};
  DilationParams params;
  // Times handed to simulate_dilative; all > 0.
  std::vector<double> out_times;
  Discretization disc;
  std::vector<TransformStep> transforms;
};

// N paths on one grid, stored path-major.
class PathEnsemble {
 public:
  PathEnsemble(TimeGrid grid, PathRole role, std::vector<double> values,
               std::uint64_t master_seed = 0, std::optional<EnsembleConfig> config = {});

  const TimeGrid& grid() const noexcept { return grid_; }
  PathRole role() const noexcept { return role_; }
  std::size_t size() const noexcept { return paths_; }
  std::span<const double> path(std::size_t n) const;
  double value(std::size_t n, std::size_t i) const { return values_[n * grid_.size() + i]; }
  std::span<const double> values() const noexcept { return values_; }
  std::uint64_t master_seed() const noexcept { return master_seed_; }
  const std::optional<EnsembleConfig>& config() const noexcept { return config_; }

 private:
  TimeGrid grid_;
  PathRole role_;
  std::vector<double> values_;
  std::size_t paths_;
  std::uint64_t master_seed_;
  std::optional<EnsembleConfig> config_;
};

// Applies `steps` in order; a Lamperti step drops a leading t = 0 point.
// Throws Error(InvalidArgument) when a step does not accept the path role.
SamplePath apply_transforms(SamplePath path, std::span<const TransformStep> steps,
                            const DilationParams& params);

// Path `index` of the ensemble (master_seed, config), generated from its own
// derived stream.
SamplePath simulate_path(const EnsembleConfig& config, std::uint64_t master_seed,
                         std::size_t index);

// Paths are generated in parallel over `threads` workers; the result does not
// depend on the worker count.
PathEnsemble simulate_ensemble(const EnsembleConfig& config, std::size_t paths,
                               std::uint64_t master_seed, unsigned threads = 1);

PathEnsemble transform_ensemble(const PathEnsemble& ensemble,
                                std::span<const TransformStep> steps,
                                const DilationParams& params);

struct EcfEstimate {
  std::vector<double> times;
  std::vector<double> thetas;
  std::complex<double> cf_mean;
  double cf_se = 0.0;
  std::complex<double> logcf;
  // cf_se / |cf_mean|; the component errors below satisfy
  // logcf_se_re^2 + logcf_se_im^2 == logcf_se^2.
  double logcf_se = 0.0;
  double logcf_se_re = 0.0;
  double logcf_se_im = 0.0;
};

// Mean of exp(i sum_j thetas_j X_{times_j}) over paths, in path order.
// logcf holds the principal logarithm.
EcfEstimate estimate_ecf(const PathEnsemble& ensemble, std::span<const double> times,
                         std::span<const double> thetas);

// max(0.1, 5 / sqrt(N)).
double magnitude_floor(std::size_t paths);

// Estimates at r * direction for r = 1/r_steps, ..., 1 with the phase
// unwrapped along the ray from r = 0. Throws LowMagnitudeError at the first r
// with |cf| below magnitude_floor.
std::vector<EcfEstimate> estimate_log_cf(const PathEnsemble& ensemble,
                                         std::span<const double> times,
                                         std::span<const double> direction, int r_steps);

// Closed-form Psi^X_t(theta) for Gaussian and symmetric stable drivers:
//   -c |theta|^p * delta/(e^delta - 1) * t^{pH + delta} / (pH + delta)
// plus the drift term of a Gaussian driver. t == 0 gives 0.
// Throws Error(OracleOutOfDomain) if pH + delta <= 0, t < 0 or the driver has
// no closed form.
std::complex<double> oracle_log_cf(const LevyDriverSpec& spec, const DilationParams& params,
                                   double t, double theta);

// Joint exponent Psi_{t_1..t_k}(theta_1..theta_k) of the additive process,
// assembled from independent increments. Times need not be sorted.
std::complex<double> oracle_log_cf_joint(const LevyDriverSpec& spec,
                                         const DilationParams& params,
                                         std::span<const double> times,
                                         std::span<const double> thetas);

enum class LawKind { Dilative, Translative, TimeStable, Idt };

std::string_view to_string(LawKind kind);

// Scaling law checked as lhs = Psi_{scaled times}(scaled thetas) against
// rhs = factor * Psi_{times}(thetas'):
//   dilative     Psi_{Tt}(theta)          vs T^delta Psi_t(T^H theta)
//   translative  Psi_{t+T}(theta)         vs e^{delta T} Psi_t(theta)
//   time_stable  Psi_{n^{1/delta} t}(th.) vs n Psi_t(theta)
//   idt          Psi_{nt}(theta)          vs n Psi_t(theta)
struct ScalingLaw {
  LawKind kind = LawKind::Dilative;
  double alpha = 0.0;
  double delta = 0.0;
  double shift = 1.0;  // T
  double n = 1.0;

  static ScalingLaw dilative(double alpha, double delta, double T);
  static ScalingLaw translative(double delta, double T);
  static ScalingLaw time_stable(double delta, double n);
  static ScalingLaw idt(double n);

  std::vector<double> lhs_times(std::span<const double> times) const;
  // Thetas at which the base-time exponent is evaluated on the rhs.
  std::vector<double> rhs_thetas(std::span<const double> thetas) const;
  double factor() const;
};

struct TestPoint {
  std::vector<double> times;
  std::vector<double> thetas;

  static TestPoint single(double t, double theta);
  // Characteristic function of (X_{t1}, X_{t2} - X_{t1}) at (theta_level,
  // theta_increment), written as a joint point at (t1, t2).
  static TestPoint increments(double t1, double t2, double theta_level,
                              double theta_increment);
};

struct ScalingRow {
  TestPoint point;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double z_re = 0.0;
  double z_im = 0.0;
  bool pass = true;
  // Closed-form value of the lhs, when the ensemble is an untransformed X
  // ensemble with an oracle-supported driver and the law is dilative.
  std::optional<std::complex<double>> oracle;
  double oracle_z_re = 0.0;
  double oracle_z_im = 0.0;
};

struct ScalingReport {
  ScalingLaw law;
  std::vector<ScalingRow> rows;
  double pass_fraction = 1.0;
};

struct CheckOptions {
  int r_steps = 16;
  double z_threshold = 3.0;
};

// z-scores use pooled errors sqrt(se_lhs^2 + (factor * se_rhs)^2) per
// component; a row passes when both |z| <= z_threshold. A row whose pooled
// error is zero passes iff lhs == rhs exactly.
ScalingReport check_scaling(const PathEnsemble& ensemble, const ScalingLaw& law,
                            std::span<const TestPoint> points,
                            const CheckOptions& options = {});

// As above with the lhs estimated from `lhs_ensemble` and the rhs from
// `rhs_ensemble`.
ScalingReport check_scaling(const PathEnsemble& lhs_ensemble, const PathEnsemble& rhs_ensemble,
                            const ScalingLaw& law, std::span<const TestPoint> points,
                            const CheckOptions& options = {});

// Maps dilative test points (on X, scale T) to the translative points they
// correspond to on the Lamperti transform V: times log t, shift log T,
// thetas (T t)^H theta. Evaluated on the same paths the two checks see the
// same per-path quantities, so their z-scores agree up to rounding.
std::vector<TestPoint> dilative_to_translative(std::span<const TestPoint> points,
                                               const DilationParams& params, double T);
// Translative points (shift S) to time-stable points on Z = V o log:
// times e^u, n = e^{delta S}.
std::vector<TestPoint> translative_to_time_stable(std::span<const TestPoint> points);
// Translative points to IDT points on D = V o (log / delta): times e^{delta u},
// n = e^{delta S}.
std::vector<TestPoint> translative_to_idt(std::span<const TestPoint> points, double delta);

}  // namespace dilastab
