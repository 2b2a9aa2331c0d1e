#include "dilastab/drivers.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dilastab/error.hpp"

namespace dilastab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

// Standard symmetric stable draw with characteristic function exp(-|theta|^p),
// 0 < p < 2, by the Chambers-Mallows-Stuck method.
double standard_symmetric_stable(double p, RandomStream& rng) {
  const double v = std::numbers::pi * (rng.uniform() - 0.5);
  if (p == 1.0) return std::tan(v);
  const double w = rng.exponential();
  return std::sin(p * v) / std::pow(std::cos(v), 1.0 / p) *
         std::pow(std::cos((1.0 - p) * v) / w, (1.0 - p) / p);
}

}  // namespace

void validate(const LevyDriverSpec& spec) {
  std::visit(Overloaded{
                 [](const GaussianDriver& d) {
                   require(std::isfinite(d.variance) && d.variance >= 0.0,
                           "gaussian variance must be finite and >= 0");
                   require(std::isfinite(d.drift), "gaussian drift must be finite");
                 },
                 [](const SymmetricStableDriver& d) {
                   require(d.index > 0.0 && d.index <= 2.0, "stable index must lie in (0, 2]");
                   require(std::isfinite(d.scale) && d.scale > 0.0,
                           "stable scale must be finite and > 0");
                 },
                 [](const CompoundPoissonDriver& d) {
                   require(std::isfinite(d.rate) && d.rate > 0.0,
                           "compound poisson rate must be finite and > 0");
                   std::visit(Overloaded{
                                  [](const GaussianJumps& j) {
                                    require(std::isfinite(j.mean), "jump mean must be finite");
                                    require(std::isfinite(j.variance) && j.variance >= 0.0,
                                            "jump variance must be finite and >= 0");
                                  },
                                  [](const TwoPointJumps& j) {
                                    require(std::isfinite(j.size), "jump size must be finite");
                                  },
                              },
                              d.jumps);
                 },
                 [](const GammaDriver& d) {
                   require(std::isfinite(d.shape) && d.shape > 0.0,
                           "gamma shape must be finite and > 0");
                   require(std::isfinite(d.rate) && d.rate > 0.0,
                           "gamma rate must be finite and > 0");
                 },
             },
             spec);
}

std::string_view kind_name(const LevyDriverSpec& spec) {
  return std::visit(Overloaded{
                        [](const GaussianDriver&) { return std::string_view("gaussian"); },
                        [](const SymmetricStableDriver&) {
                          return std::string_view("symmetric_stable");
                        },
                        [](const CompoundPoissonDriver&) {
                          return std::string_view("compound_poisson");
                        },
                        [](const GammaDriver&) { return std::string_view("gamma"); },
                    },
                    spec);
}

double max_moment_order(const LevyDriverSpec& spec) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (const auto* s = std::get_if<SymmetricStableDriver>(&spec)) {
    return s->index < 2.0 ? s->index : kInf;
  }
  return kInf;
}

bool has_finite_log_moment(const LevyDriverSpec&) { return true; }

UnitMoments unit_moments(const LevyDriverSpec& spec) {
  return std::visit(
      Overloaded{
          [](const GaussianDriver& d) { return UnitMoments{d.drift, d.variance}; },
          [](const SymmetricStableDriver& d) {
            if (d.index == 2.0) return UnitMoments{0.0, 2.0 * d.scale};
            return UnitMoments{0.0, std::numeric_limits<double>::infinity()};
          },
          [](const CompoundPoissonDriver& d) {
            return std::visit(
                Overloaded{
                    [&](const GaussianJumps& j) {
                      return UnitMoments{d.rate * j.mean,
                                         d.rate * (j.variance + j.mean * j.mean)};
                    },
                    [&](const TwoPointJumps& j) {
                      return UnitMoments{0.0, d.rate * j.size * j.size};
                    },
                },
                d.jumps);
          },
          [](const GammaDriver& d) {
            return UnitMoments{d.shape / d.rate, d.shape / (d.rate * d.rate)};
          },
      },
      spec);
}

std::complex<double> unit_levy_exponent(const LevyDriverSpec& spec, double theta) {
  using C = std::complex<double>;
  return std::visit(
      Overloaded{
          [&](const GaussianDriver& d) {
            return C(-0.5 * d.variance * theta * theta, d.drift * theta);
          },
          [&](const SymmetricStableDriver& d) {
            return C(-d.scale * std::pow(std::abs(theta), d.index), 0.0);
          },
          [&](const CompoundPoissonDriver& d) {
            return std::visit(
                Overloaded{
                    [&](const GaussianJumps& j) {
                      const double damp = std::exp(-0.5 * j.variance * theta * theta);
                      const double phase = j.mean * theta;
                      // damp * cos(phase) - 1 without cancellation near theta = 0.
                      const double half = std::sin(0.5 * phase);
                      const double re = std::expm1(-0.5 * j.variance * theta * theta) -
                                        2.0 * damp * half * half;
                      return C(d.rate * re, d.rate * damp * std::sin(phase));
                    },
                    [&](const TwoPointJumps& j) {
                      const double half = std::sin(0.5 * j.size * theta);
                      return C(-2.0 * d.rate * half * half, 0.0);
                    },
                },
                d.jumps);
          },
          [&](const GammaDriver& d) {
            // -k log(1 - i theta / r), principal branch.
            const double x = theta / d.rate;
            return C(-0.5 * d.shape * std::log1p(x * x), d.shape * std::atan(x));
          },
      },
      spec);
}

double sample_increment(const LevyDriverSpec& spec, double dt, RandomStream& rng) {
  if (!(dt >= 0.0)) throw Error(ErrorCode::InvalidArgument, "increment length must be >= 0");
  if (dt == 0.0) return 0.0;
  return std::visit(
      Overloaded{
          [&](const GaussianDriver& d) {
            return d.drift * dt + std::sqrt(d.variance * dt) * rng.normal();
          },
          [&](const SymmetricStableDriver& d) {
            if (d.index == 2.0) return std::sqrt(2.0 * d.scale * dt) * rng.normal();
            return std::pow(d.scale * dt, 1.0 / d.index) *
                   standard_symmetric_stable(d.index, rng);
          },
          [&](const CompoundPoissonDriver& d) {
            const std::uint64_t jumps = rng.poisson(d.rate * dt);
            if (jumps == 0) return 0.0;
            const double count = static_cast<double>(jumps);
            return std::visit(
                Overloaded{
                    [&](const GaussianJumps& j) {
                      return count * j.mean + std::sqrt(count * j.variance) * rng.normal();
                    },
                    [&](const TwoPointJumps& j) {
                      const double ups = static_cast<double>(rng.binomial(jumps, 0.5));
                      return j.size * (2.0 * ups - count);
                    },
                },
                d.jumps);
          },
          [&](const GammaDriver& d) { return rng.gamma(d.shape * dt) / d.rate; },
      },
      spec);
}

std::vector<double> sample_two_sided_values(const LevyDriverSpec& spec,
                                            std::span<const double> lengths,
                                            std::size_t origin, RandomStream& rng) {
  const std::size_t points = lengths.size() + 1;
  if (origin >= points) throw Error(ErrorCode::InvalidArgument, "origin index out of range");
  std::vector<double> values(points, 0.0);
  RandomStream left = rng.split();
  for (std::size_t j = origin; j + 1 < points; ++j) {
    values[j + 1] = values[j] + sample_increment(spec, lengths[j], rng);
  }
  for (std::size_t j = origin; j-- > 0;) {
    values[j] = values[j + 1] - sample_increment(spec, lengths[j], left);
  }
  return values;
}

SamplePath sample_two_sided(const LevyDriverSpec& spec, const TimeGrid& grid,
                            RandomStream& rng) {
  const auto origin = grid.find(0.0);
  if (!origin) {
    std::ostringstream os;
    os << "grid [" << grid.front() << ", " << grid.back() << "] does not contain 0";
    throw Error(ErrorCode::GridMissingOrigin, os.str());
  }
  std::vector<double> lengths(grid.size() - 1);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) lengths[j] = grid[j + 1] - grid[j];
  return SamplePath(grid, sample_two_sided_values(spec, lengths, *origin, rng), PathRole::L);
}

}  // namespace dilastab
