#include "dilastab/ecf.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "dilastab/error.hpp"
#include "dilastab/random.hpp"
#include "dilastab/timechange.hpp"

namespace dilastab {

namespace {

constexpr std::pair<TransformStep, std::string_view> kTransformNames[] = {
    {TransformStep::Lamperti, "lamperti"},
    {TransformStep::LampertiInverse, "lamperti_inverse"},
    {TransformStep::TimeStable, "time_stable"},
    {TransformStep::Idt, "idt"},
};

void require_role(const SamplePath& path, PathRole expected, TransformStep step) {
  if (path.role() != expected) {
    std::ostringstream os;
    os << "transform " << to_string(step) << " expects a " << to_string(expected)
       << " path, got " << to_string(path.role());
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

SamplePath drop_origin(const SamplePath& x) {
  if (x.size() < 2 || x.time(0) != 0.0) return x;
  std::vector<double> times(x.grid().points().begin() + 1, x.grid().points().end());
  std::vector<double> values(x.values().begin() + 1, x.values().end());
  return SamplePath(TimeGrid(std::move(times)), std::move(values), x.role());
}

void require_matching(std::span<const double> times, std::span<const double> thetas) {
  if (times.size() != thetas.size()) {
    throw Error(ErrorCode::InvalidArgument, "times and thetas differ in length");
  }
}

// Closed-form shape of Psi^X_t for drivers with one: -c|theta|^p plus drift.
struct OracleShape {
  double p;
  double c;
  double drift;
};

std::optional<OracleShape> oracle_shape(const LevyDriverSpec& spec) {
  if (const auto* g = std::get_if<GaussianDriver>(&spec)) {
    return OracleShape{2.0, 0.5 * g->variance, g->drift};
  }
  if (const auto* s = std::get_if<SymmetricStableDriver>(&spec)) {
    return OracleShape{s->index, s->scale, 0.0};
  }
  return std::nullopt;
}

double z_score(double diff, double se) {
  if (se > 0.0) return diff / se;
  if (diff == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), diff);
}

std::complex<double> last_log_cf(const PathEnsemble& ens, std::span<const double> times,
                                 std::span<const double> thetas, int r_steps,
                                 double* se_re, double* se_im) {
  const auto ray = estimate_log_cf(ens, times, thetas, r_steps);
  *se_re = ray.back().logcf_se_re;
  *se_im = ray.back().logcf_se_im;
  return ray.back().logcf;
}

std::optional<EnsembleConfig> oracle_config(const PathEnsemble& ens, const ScalingLaw& law) {
  if (law.kind != LawKind::Dilative || ens.role() != PathRole::X) return std::nullopt;
  const auto& config = ens.config();
  if (!config || !config->transforms.empty() || !oracle_shape(config->driver)) {
    return std::nullopt;
  }
  return config;
}

}  // namespace

std::string_view to_string(TransformStep step) {
  for (const auto& [s, name] : kTransformNames) {
    if (s == step) return name;
  }
  return "?";
}

std::optional<TransformStep> parse_transform(std::string_view name) {
  for (const auto& [s, n] : kTransformNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

PathEnsemble::PathEnsemble(TimeGrid grid, PathRole role, std::vector<double> values,
                           std::uint64_t master_seed, std::optional<EnsembleConfig> config)
    : grid_(std::move(grid)),
      role_(role),
      values_(std::move(values)),
      paths_(values_.size() / grid_.size()),
      master_seed_(master_seed),
      config_(std::move(config)) {
  if (values_.empty() || values_.size() % grid_.size() != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "ensemble values must hold a positive whole number of paths");
  }
}

std::span<const double> PathEnsemble::path(std::size_t n) const {
  if (n >= paths_) throw Error(ErrorCode::InvalidArgument, "path index out of range");
  return std::span<const double>(values_).subspan(n * grid_.size(), grid_.size());
}

SamplePath apply_transforms(SamplePath path, std::span<const TransformStep> steps,
                            const DilationParams& params) {
  for (TransformStep step : steps) {
    switch (step) {
      case TransformStep::Lamperti:
        require_role(path, PathRole::X, step);
        path = lamperti_transform(drop_origin(path), params);
        break;
      case TransformStep::LampertiInverse:
        require_role(path, PathRole::V, step);
        path = lamperti_inverse(path, params);
        break;
      case TransformStep::TimeStable:
        require_role(path, PathRole::V, step);
        path = reparam_time_stable(path);
        break;
      case TransformStep::Idt:
        require_role(path, PathRole::V, step);
        path = reparam_idt(path, params.delta);
        break;
    }
  }
  return path;
}

SamplePath simulate_path(const EnsembleConfig& config, std::uint64_t master_seed,
                         std::size_t index) {
  RandomStream rng(derive_seed(master_seed, index));
  SamplePath x = simulate_dilative(config.driver, config.params,
                                   TimeGrid::from_unsorted(config.out_times), config.disc, rng);
  return apply_transforms(std::move(x), config.transforms, config.params);
}

PathEnsemble simulate_ensemble(const EnsembleConfig& config, std::size_t paths,
                               std::uint64_t master_seed, unsigned threads) {
  if (paths == 0) throw Error(ErrorCode::InvalidArgument, "ensemble needs at least one path");
  const SamplePath first = simulate_path(config, master_seed, 0);
  const std::size_t width = first.size();
  std::vector<double> values(paths * width);
  std::copy(first.values().begin(), first.values().end(), values.begin());

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](std::size_t begin, std::size_t stride) {
    try {
      for (std::size_t n = begin; n < paths; n += stride) {
        const SamplePath p = simulate_path(config, master_seed, n);
        std::copy(p.values().begin(), p.values().end(),
                  values.begin() + static_cast<std::ptrdiff_t>(n * width));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, paths);
  if (workers == 1) {
    work(1, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, 1 + w, workers);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return PathEnsemble(first.grid(), first.role(), std::move(values), master_seed, config);
}

PathEnsemble transform_ensemble(const PathEnsemble& ensemble,
                                std::span<const TransformStep> steps,
                                const DilationParams& params) {
  std::vector<double> values;
  std::optional<TimeGrid> grid;
  PathRole role = ensemble.role();
  for (std::size_t n = 0; n < ensemble.size(); ++n) {
    const auto src = ensemble.path(n);
    SamplePath p = apply_transforms(
        SamplePath(ensemble.grid(), std::vector<double>(src.begin(), src.end()), ensemble.role()),
        steps, params);
    if (!grid) {
      grid = p.grid();
      role = p.role();
      values.reserve(ensemble.size() * p.size());
    }
    values.insert(values.end(), p.values().begin(), p.values().end());
  }
  std::optional<EnsembleConfig> config = ensemble.config();
  if (config) config->transforms.insert(config->transforms.end(), steps.begin(), steps.end());
  return PathEnsemble(std::move(*grid), role, std::move(values), ensemble.master_seed(),
                      std::move(config));
}

EcfEstimate estimate_ecf(const PathEnsemble& ensemble, std::span<const double> times,
                         std::span<const double> thetas) {
  require_matching(times, thetas);
  std::vector<std::size_t> index(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) index[j] = ensemble.grid().index_of(times[j]);

  const std::size_t n_paths = ensemble.size();
  std::vector<double> c(n_paths);
  std::vector<double> s(n_paths);
  double sum_c = 0.0;
  double sum_s = 0.0;
  for (std::size_t n = 0; n < n_paths; ++n) {
    double phase = 0.0;
    for (std::size_t j = 0; j < index.size(); ++j) phase += thetas[j] * ensemble.value(n, index[j]);
    c[n] = std::cos(phase);
    s[n] = std::sin(phase);
    sum_c += c[n];
    sum_s += s[n];
  }
  const double count = static_cast<double>(n_paths);
  const double mr = sum_c / count;
  const double mi = sum_s / count;
  double vcc = 0.0;
  double vss = 0.0;
  double vcs = 0.0;
  for (std::size_t n = 0; n < n_paths; ++n) {
    vcc += (c[n] - mr) * (c[n] - mr);
    vss += (s[n] - mi) * (s[n] - mi);
    vcs += (c[n] - mr) * (s[n] - mi);
  }
  vcc /= count;
  vss /= count;
  vcs /= count;

  EcfEstimate est;
  est.times.assign(times.begin(), times.end());
  est.thetas.assign(thetas.begin(), thetas.end());
  est.cf_mean = {mr, mi};
  const double mag2 = mr * mr + mi * mi;
  est.cf_se = std::sqrt(std::max(0.0, 1.0 - mag2) / count);
  est.logcf = std::log(est.cf_mean);
  est.logcf_se = est.cf_se / std::sqrt(mag2);
  const double denom = count * mag2 * mag2;
  const double var_re = (mr * mr * vcc + mi * mi * vss + 2.0 * mr * mi * vcs) / denom;
  const double var_im = (mr * mr * vss + mi * mi * vcc - 2.0 * mr * mi * vcs) / denom;
  est.logcf_se_re = std::sqrt(std::max(0.0, var_re));
  est.logcf_se_im = std::sqrt(std::max(0.0, var_im));
  return est;
}

double magnitude_floor(std::size_t paths) {
  return std::max(0.1, 5.0 / std::sqrt(static_cast<double>(paths)));
}

std::vector<EcfEstimate> estimate_log_cf(const PathEnsemble& ensemble,
                                         std::span<const double> times,
                                         std::span<const double> direction, int r_steps) {
  require_matching(times, direction);
  if (r_steps < 1) throw Error(ErrorCode::InvalidArgument, "r_steps must be >= 1");
  const double floor = magnitude_floor(ensemble.size());
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  std::vector<EcfEstimate> ray;
  ray.reserve(static_cast<std::size_t>(r_steps));
  std::vector<double> thetas(direction.size());
  double previous = 0.0;
  for (int k = 1; k <= r_steps; ++k) {
    const double r = static_cast<double>(k) / r_steps;
    for (std::size_t j = 0; j < thetas.size(); ++j) thetas[j] = r * direction[j];
    EcfEstimate est = estimate_ecf(ensemble, times, thetas);
    const double magnitude = std::abs(est.cf_mean);
    if (magnitude < floor) throw LowMagnitudeError(r, magnitude, floor);
    double phase = std::arg(est.cf_mean);
    phase += kTwoPi * std::round((previous - phase) / kTwoPi);
    est.logcf = {std::log(magnitude), phase};
    previous = phase;
    ray.push_back(std::move(est));
  }
  return ray;
}

std::complex<double> oracle_log_cf(const LevyDriverSpec& spec, const DilationParams& params,
                                   double t, double theta) {
  const auto shape = oracle_shape(spec);
  if (!shape) {
    throw Error(ErrorCode::OracleOutOfDomain,
                std::string("no closed-form exponent for driver ") + std::string(kind_name(spec)));
  }
  validate(spec);
  if (!(t >= 0.0)) throw Error(ErrorCode::OracleOutOfDomain, "oracle needs t >= 0");
  const double h = params.hurst();
  const double rate = shape->p * h + params.delta;
  if (!(rate > 0.0)) {
    std::ostringstream os;
    os << "oracle needs pH + delta > 0, got " << rate;
    throw Error(ErrorCode::OracleOutOfDomain, os.str());
  }
  const double drift_rate = h + params.delta;
  if (shape->drift != 0.0 && !(drift_rate > 0.0)) {
    std::ostringstream os;
    os << "oracle drift term needs H + delta > 0, got " << drift_rate;
    throw Error(ErrorCode::OracleOutOfDomain, os.str());
  }
  if (t == 0.0 || theta == 0.0) return {0.0, 0.0};
  const double w = tau_scale(params.delta);
  const double re = -shape->c * std::pow(std::abs(theta), shape->p) * w *
                    std::pow(t, rate) / rate;
  double im = 0.0;
  if (shape->drift != 0.0) im = shape->drift * theta * w * std::pow(t, drift_rate) / drift_rate;
  return {re + 0.0, im + 0.0};
}

std::complex<double> oracle_log_cf_joint(const LevyDriverSpec& spec,
                                         const DilationParams& params,
                                         std::span<const double> times,
                                         std::span<const double> thetas) {
  require_matching(times, thetas);
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });

  // sum_j theta_j X_{t_j} = sum_j Theta_j (X_{t_j} - X_{t_{j-1}}), Theta_j the tail sum.
  std::vector<double> tail(order.size() + 1, 0.0);
  for (std::size_t k = order.size(); k-- > 0;) tail[k] = tail[k + 1] + thetas[order[k]];
  std::complex<double> total = 0.0;
  double previous = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double t = times[order[k]];
    total += oracle_log_cf(spec, params, t, tail[k]) -
             oracle_log_cf(spec, params, previous, tail[k]);
    previous = t;
  }
  return total;
}

std::string_view to_string(LawKind kind) {
  switch (kind) {
    case LawKind::Dilative: return "dilative";
    case LawKind::Translative: return "translative";
    case LawKind::TimeStable: return "time_stable";
    case LawKind::Idt: return "idt";
  }
  return "?";
}

ScalingLaw ScalingLaw::dilative(double alpha, double delta, double T) {
  if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "dilative law needs T > 0");
  return {LawKind::Dilative, alpha, delta, T, 1.0};
}

ScalingLaw ScalingLaw::translative(double delta, double T) {
  return {LawKind::Translative, 0.0, delta, T, 1.0};
}

ScalingLaw ScalingLaw::time_stable(double delta, double n) {
  if (std::abs(delta) < kZeroDelta) {
    throw Error(ErrorCode::DegenerateDelta, "time-stable law needs delta != 0");
  }
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "time-stable law needs n > 0");
  return {LawKind::TimeStable, 0.0, delta, 1.0, n};
}

ScalingLaw ScalingLaw::idt(double n) {
  if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "idt law needs n > 0");
  return {LawKind::Idt, 0.0, 0.0, 1.0, n};
}

std::vector<double> ScalingLaw::lhs_times(std::span<const double> times) const {
  std::vector<double> out(times.begin(), times.end());
  for (double& t : out) {
    switch (kind) {
      case LawKind::Dilative: t *= shift; break;
      case LawKind::Translative: t += shift; break;
      case LawKind::TimeStable: t *= std::pow(n, 1.0 / delta); break;
      case LawKind::Idt: t *= n; break;
    }
  }
  return out;
}

std::vector<double> ScalingLaw::rhs_thetas(std::span<const double> thetas) const {
  std::vector<double> out(thetas.begin(), thetas.end());
  if (kind == LawKind::Dilative) {
    const double scale = std::pow(shift, alpha - delta / 2.0);
    for (double& th : out) th *= scale;
  }
  return out;
}

double ScalingLaw::factor() const {
  switch (kind) {
    case LawKind::Dilative: return std::pow(shift, delta);
    case LawKind::Translative: return std::exp(delta * shift);
    case LawKind::TimeStable:
    case LawKind::Idt: return n;
  }
  return 1.0;
}

TestPoint TestPoint::single(double t, double theta) { return {{t}, {theta}}; }

TestPoint TestPoint::increments(double t1, double t2, double theta_level,
                                double theta_increment) {
  return {{t1, t2}, {theta_level - theta_increment, theta_increment}};
}

ScalingReport check_scaling(const PathEnsemble& ensemble, const ScalingLaw& law,
                            std::span<const TestPoint> points, const CheckOptions& options) {
  return check_scaling(ensemble, ensemble, law, points, options);
}

ScalingReport check_scaling(const PathEnsemble& lhs_ensemble, const PathEnsemble& rhs_ensemble,
                            const ScalingLaw& law, std::span<const TestPoint> points,
                            const CheckOptions& options) {
  ScalingReport report;
  report.law = law;
  const double factor = law.factor();
  const auto oracle = oracle_config(lhs_ensemble, law);
  std::size_t passed = 0;
  for (const TestPoint& point : points) {
    require_matching(point.times, point.thetas);
    ScalingRow row;
    row.point = point;
    const std::vector<double> lhs_times = law.lhs_times(point.times);
    const std::vector<double> rhs_thetas = law.rhs_thetas(point.thetas);

    double l_re = 0.0;
    double l_im = 0.0;
    double r_re = 0.0;
    double r_im = 0.0;
    row.lhs = last_log_cf(lhs_ensemble, lhs_times, point.thetas, options.r_steps, &l_re, &l_im);
    row.rhs = factor *
              last_log_cf(rhs_ensemble, point.times, rhs_thetas, options.r_steps, &r_re, &r_im);
    const std::complex<double> diff = row.lhs - row.rhs;
    row.z_re = z_score(diff.real(), std::hypot(l_re, factor * r_re));
    row.z_im = z_score(diff.imag(), std::hypot(l_im, factor * r_im));
    row.pass = std::abs(row.z_re) <= options.z_threshold &&
               std::abs(row.z_im) <= options.z_threshold;
    if (row.pass) ++passed;

    if (oracle) {
      row.oracle = oracle_log_cf_joint(oracle->driver, oracle->params, lhs_times, point.thetas);
      row.oracle_z_re = z_score(row.lhs.real() - row.oracle->real(), l_re);
      row.oracle_z_im = z_score(row.lhs.imag() - row.oracle->imag(), l_im);
    }
    report.rows.push_back(std::move(row));
  }
  report.pass_fraction =
      report.rows.empty() ? 1.0
                          : static_cast<double>(passed) / static_cast<double>(report.rows.size());
  return report;
}

std::vector<TestPoint> dilative_to_translative(std::span<const TestPoint> points,
                                               const DilationParams& params, double T) {
  const double h = params.hurst();
  std::vector<TestPoint> out;
  out.reserve(points.size());
  for (const TestPoint& p : points) {
    TestPoint q;
    for (std::size_t j = 0; j < p.times.size(); ++j) {
      q.times.push_back(std::log(p.times[j]));
      q.thetas.push_back(std::pow(T * p.times[j], h) * p.thetas[j]);
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<TestPoint> translative_to_time_stable(std::span<const TestPoint> points) {
  std::vector<TestPoint> out(points.begin(), points.end());
  for (TestPoint& p : out) {
    for (double& t : p.times) t = std::exp(t);
  }
  return out;
}

std::vector<TestPoint> translative_to_idt(std::span<const TestPoint> points, double delta) {
  std::vector<TestPoint> out(points.begin(), points.end());
  for (TestPoint& p : out) {
    for (double& t : p.times) t = std::exp(delta * t);
  }
  return out;
}

}  // namespace dilastab
