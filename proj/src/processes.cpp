#include "dilastab/processes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dilastab/integrator.hpp"
#include "dilastab/timechange.hpp"

namespace dilastab {

namespace {

std::string inadmissible_message(const AdmissibilityVerdict& verdict) {
  return "inadmissible parameters: " + verdict.reason;
}

void require_admissible(const DilationParams& params, const LevyDriverSpec& spec) {
  AdmissibilityVerdict verdict = admissibility(params, spec);
  if (!verdict.admissible()) throw InadmissibleParamsError(std::move(verdict));
}

void require_discretization(const Discretization& disc) {
  if (disc.refine < 1) throw Error(ErrorCode::InvalidArgument, "refine must be >= 1");
  if (!(disc.tail_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tail_tol must be > 0");
}

void require_positive_times(std::span<const double> times) {
  for (double t : times) {
    if (!(t > 0.0)) {
      std::ostringstream os;
      os << "time " << t << " is not positive";
      throw Error(ErrorCode::NonPositiveTime, os.str());
    }
  }
}

// Scale contribution w * e^{rate u} / rate of int_{-inf}^u e^{...} tau'(v) dv.
double tail_mass(double delta, double rate, double u) {
  if (!(rate > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tail of the random integral does not decay");
  }
  return tau_scale(delta) * std::exp(rate * u) / rate;
}

std::vector<double> log_points(std::span<const double> times) {
  std::vector<double> out(times.size());
  std::transform(times.begin(), times.end(), out.begin(), [](double t) { return std::log(t); });
  return out;
}

}  // namespace

InadmissibleParamsError::InadmissibleParamsError(AdmissibilityVerdict verdict)
    : Error(ErrorCode::InadmissibleParams, inadmissible_message(verdict)),
      verdict_(std::move(verdict)) {}

double tail_scale(const LevyDriverSpec& spec, const DilationParams& params, double u) {
  const double h = params.hurst();
  const double delta = params.delta;
  if (const auto* s = std::get_if<SymmetricStableDriver>(&spec); s && s->index < 2.0) {
    const double p = s->index;
    return std::pow(s->scale * tail_mass(delta, p * h + delta, u), 1.0 / p);
  }
  const UnitMoments m = unit_moments(spec);
  double scale = 0.0;
  if (m.variance > 0.0) scale += std::sqrt(m.variance * tail_mass(delta, 2.0 * h + delta, u));
  if (m.mean != 0.0) scale += std::abs(m.mean) * tail_mass(delta, h + delta, u);
  return scale;
}

double truncation_log_time(const LevyDriverSpec& spec, const DilationParams& params,
                           const Discretization& disc, double upper) {
  require_discretization(disc);
  const double tol = disc.tail_tol;
  double lo = std::min(upper, 0.0);
  double hi = lo;
  constexpr int kMaxUnits = 1000000;
  int units = 0;
  while (!(tail_scale(spec, params, lo) < tol)) {
    hi = lo;
    lo -= 1.0;
    if (++units > kMaxUnits) {
      throw Error(ErrorCode::InvalidArgument, "tail truncation point not found");
    }
  }
  if (hi > lo) {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (tail_scale(spec, params, mid) < tol) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  const double refine = static_cast<double>(disc.refine);
  double u_min = std::floor(lo * refine) / refine;
  if (!(u_min < upper)) u_min = (std::ceil(upper * refine) - 1.0) / refine;
  return u_min;
}

TimeGrid refined_log_grid(double u_min, double u_max, int refine,
                          std::span<const double> inserted) {
  if (refine < 1) throw Error(ErrorCode::InvalidArgument, "refine must be >= 1");
  std::vector<double> extra(inserted.begin(), inserted.end());
  std::sort(extra.begin(), extra.end());
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 10.0 * TimeGrid::kMatchTolerance * std::max(1.0, std::abs(b));
  };
  extra.erase(std::unique(extra.begin(), extra.end(), close), extra.end());

  const double r = static_cast<double>(refine);
  const auto k_first = static_cast<long long>(std::floor(u_min * r));
  const auto k_last = static_cast<long long>(std::ceil(std::max(u_max, 0.0) * r));
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(k_last - k_first + 1) + extra.size());
  for (long long k = k_first; k <= k_last; ++k) {
    const double u = static_cast<double>(k) / r;
    auto it = std::lower_bound(extra.begin(), extra.end(), u);
    const bool shadowed = (it != extra.end() && close(u, *it)) ||
                          (it != extra.begin() && close(u, *std::prev(it)));
    if (!shadowed) points.push_back(u);
  }
  points.insert(points.end(), extra.begin(), extra.end());
  return TimeGrid::from_unsorted(std::move(points));
}

SamplePath sample_background(const LevyDriverSpec& spec, double delta,
                             const TimeGrid& log_grid, RandomStream& rng) {
  const auto origin = log_grid.find(0.0);
  if (!origin) throw Error(ErrorCode::GridMissingOrigin, "log-time grid does not contain 0");
  std::vector<double> lengths(log_grid.size() - 1);
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    lengths[j] = tau_increment(delta, log_grid[j], log_grid[j + 1] - log_grid[j]);
  }
  return SamplePath(log_grid, sample_two_sided_values(spec, lengths, *origin, rng),
                    PathRole::Y);
}

SamplePath integrate_background(const SamplePath& background, const DilationParams& params) {
  const double h = params.hurst();
  std::vector<double> x =
      rs_integral_path([h](double u) { return std::exp(u * h); }, background, 0);
  std::vector<double> times(background.size());
  for (std::size_t j = 0; j < times.size(); ++j) times[j] = std::exp(background.time(j));
  return SamplePath(TimeGrid(std::move(times)), std::move(x), PathRole::X);
}

DilativeRealization simulate_realization(const LevyDriverSpec& spec,
                                         const DilationParams& params,
                                         std::span<const double> log_times,
                                         const Discretization& disc, RandomStream& rng) {
  require_admissible(params, spec);
  require_discretization(disc);
  if (log_times.empty()) throw Error(ErrorCode::InvalidArgument, "no output times requested");
  const auto [lo, hi] = std::minmax_element(log_times.begin(), log_times.end());
  const double u_min = truncation_log_time(spec, params, disc, *lo);
  TimeGrid grid = refined_log_grid(u_min, *hi, disc.refine, log_times);
  SamplePath y = sample_background(spec, params.delta, grid, rng);
  SamplePath x = integrate_background(y, params);
  return {std::move(y), std::move(x)};
}

SamplePath simulate_dilative(const LevyDriverSpec& spec, const DilationParams& params,
                             const TimeGrid& out_times, const Discretization& disc,
                             RandomStream& rng) {
  require_positive_times(out_times.points());
  AdmissibilityVerdict verdict = admissibility(params, spec);
  if (!verdict.admissible()) throw InadmissibleParamsError(std::move(verdict));

  std::vector<double> times{0.0};
  times.insert(times.end(), out_times.points().begin(), out_times.points().end());
  std::vector<double> values(times.size(), 0.0);

  if (verdict.status == Admissibility::DegenerateEqual) {
    // X_t = L(t^delta / (e^delta - 1)), a one-sided Levy path.
    const double denom = std::expm1(params.delta);
    double previous = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double clock = std::pow(times[i], params.delta) / denom;
      values[i] = values[i - 1] + sample_increment(spec, clock - previous, rng);
      previous = clock;
    }
    return SamplePath(TimeGrid(std::move(times)), std::move(values), PathRole::X);
  }

  const std::vector<double> logs = log_points(out_times.points());
  const DilativeRealization real = simulate_realization(spec, params, logs, disc, rng);
  const TimeGrid& log_grid = real.background.grid();
  for (std::size_t i = 0; i < logs.size(); ++i) {
    values[i + 1] = real.process.value(log_grid.index_of(logs[i]));
  }
  return SamplePath(TimeGrid(std::move(times)), std::move(values), PathRole::X);
}

SamplePath extract_background(const SamplePath& x, const DilationParams& params) {
  std::size_t first = (x.time(0) == 0.0) ? 1 : 0;
  if (first == x.size()) throw Error(ErrorCode::GridMissingUnit, "path has no positive times");
  std::vector<double> times(x.grid().points().begin() + static_cast<std::ptrdiff_t>(first),
                            x.grid().points().end());
  require_positive_times(times);
  std::vector<double> values(x.values().begin() + static_cast<std::ptrdiff_t>(first),
                             x.values().end());
  const SamplePath positive(TimeGrid(times), std::move(values), PathRole::X);
  const auto unit = positive.grid().find(1.0);
  if (!unit) throw Error(ErrorCode::GridMissingUnit, "path grid does not contain t = 1");

  const double h = params.hurst();
  std::vector<double> y = rs_integral_path(
      [h](double t) { return std::exp(-h * std::log(t)); }, positive, *unit);
  return SamplePath(TimeGrid(log_points(times)), std::move(y), PathRole::Y);
}

SamplePath lamperti_transform(const SamplePath& x, const DilationParams& params) {
  require_positive_times(x.grid().points());
  const double h = params.hurst();
  std::vector<double> u = log_points(x.grid().points());
  std::vector<double> v(x.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::exp(-h * u[j]) * x.value(j);
  return SamplePath(TimeGrid(std::move(u)), std::move(v), PathRole::V);
}

SamplePath lamperti_inverse(const SamplePath& v, const DilationParams& params,
                            bool prepend_origin) {
  const double h = params.hurst();
  std::vector<double> times;
  std::vector<double> x;
  times.reserve(v.size() + 1);
  x.reserve(v.size() + 1);
  if (prepend_origin) {
    times.push_back(0.0);
    x.push_back(0.0);
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double u = v.time(j);
    times.push_back(std::exp(u));
    x.push_back(std::exp(h * u) * v.value(j));
  }
  return SamplePath(TimeGrid(std::move(times)), std::move(x), PathRole::X);
}

SamplePath ou_evolve(double v0, const SamplePath& y, double lambda, double a, double b) {
  std::size_t ia = y.grid().index_of(a);
  std::size_t ib = y.grid().index_of(b);
  if (ia > ib) std::swap(ia, ib);
  const auto origin = y.grid().find(0.0);
  if (!origin) throw Error(ErrorCode::GridMissingOrigin, "driving path grid does not contain 0");

  const std::vector<double> integral =
      rs_integral_path([lambda](double s) { return std::exp(-lambda * s); }, y, *origin);
  std::vector<double> times;
  std::vector<double> v;
  for (std::size_t k = ia; k <= ib; ++k) {
    const double t = y.time(k);
    times.push_back(t);
    v.push_back(std::exp(lambda * t) * (v0 + integral[k]));
  }
  return SamplePath(TimeGrid(std::move(times)), std::move(v), PathRole::V);
}

OuRealization ou_realization(const LevyDriverSpec& spec, const DilationParams& params,
                             const TimeGrid& out_times, const Discretization& disc,
                             RandomStream& rng) {
  if (std::abs(params.delta) < kZeroDelta) {
    throw Error(ErrorCode::DegenerateDelta, "OU integral representation requires delta != 0");
  }
  DilativeRealization real = simulate_realization(spec, params, out_times.points(), disc, rng);
  const double h = params.hurst();
  std::vector<double> v(out_times.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t k = real.background.grid().index_of(out_times[i]);
    v[i] = std::exp(-h * real.background.time(k)) * real.process.value(k);
  }
  SamplePath ou(out_times, std::move(v), PathRole::V);
  return {std::move(ou), std::move(real)};
}

SamplePath ou_from_integral(const LevyDriverSpec& spec, const DilationParams& params,
                            const TimeGrid& out_times, const Discretization& disc,
                            RandomStream& rng) {
  return ou_realization(spec, params, out_times, disc, rng).ou;
}

SamplePath reparam_time_stable(const SamplePath& v) {
  std::vector<double> t(v.size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = std::exp(v.time(j));
  return SamplePath(TimeGrid(std::move(t)),
                    std::vector<double>(v.values().begin(), v.values().end()), PathRole::Z);
}

SamplePath reparam_time_stable_inverse(const SamplePath& z) {
  require_positive_times(z.grid().points());
  return SamplePath(TimeGrid(log_points(z.grid().points())),
                    std::vector<double>(z.values().begin(), z.values().end()), PathRole::V);
}

SamplePath reparam_idt(const SamplePath& v, double delta) {
  if (std::abs(delta) < kZeroDelta) {
    throw Error(ErrorCode::DegenerateDelta, "IDT reparameterization requires delta != 0");
  }
  std::vector<double> t(v.size());
  std::vector<double> d(v.values().begin(), v.values().end());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = std::exp(delta * v.time(j));
  if (delta < 0.0) {
    std::reverse(t.begin(), t.end());
    std::reverse(d.begin(), d.end());
  }
  return SamplePath(TimeGrid(std::move(t)), std::move(d), PathRole::D);
}

SamplePath reparam_idt_inverse(const SamplePath& d, double delta) {
  if (std::abs(delta) < kZeroDelta) {
    throw Error(ErrorCode::DegenerateDelta, "IDT reparameterization requires delta != 0");
  }
  require_positive_times(d.grid().points());
  std::vector<double> u = log_points(d.grid().points());
  for (double& x : u) x /= delta;
  std::vector<double> v(d.values().begin(), d.values().end());
  if (delta < 0.0) {
    std::reverse(u.begin(), u.end());
    std::reverse(v.begin(), v.end());
  }
  return SamplePath(TimeGrid(std::move(u)), std::move(v), PathRole::V);
}

}  // namespace dilastab
