#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "dilastab/path.hpp"
#include "dilastab/random.hpp"

namespace dilastab {

// Brownian motion with drift: L(1) ~ N(drift, variance).
struct GaussianDriver {
  double variance = 1.0;
  double drift = 0.0;
};

// Symmetric stable law with unit Levy exponent -scale * |theta|^index.
// index == 2 is the Gaussian law with variance 2 * scale.
struct SymmetricStableDriver {
  double index = 2.0;
  double scale = 1.0;
};

struct GaussianJumps {
  double mean = 0.0;
  double variance = 1.0;
};

// Jumps of size +size or -size with equal probability.
struct TwoPointJumps {
  double size = 1.0;
};

using JumpLaw = std::variant<GaussianJumps, TwoPointJumps>;

struct CompoundPoissonDriver {
  double rate = 1.0;
  JumpLaw jumps = GaussianJumps{};
};

// Gamma subordinator: L(1) ~ Gamma(shape, rate).
struct GammaDriver {
  double shape = 1.0;
  double rate = 1.0;
};

using LevyDriverSpec =
    std::variant<GaussianDriver, SymmetricStableDriver, CompoundPoissonDriver, GammaDriver>;

// Throws Error(InvalidArgument) when a parameter is out of range.
void validate(const LevyDriverSpec& spec);

std::string_view kind_name(const LevyDriverSpec& spec);

// Supremum of the orders gamma with E|L(1)|^gamma finite: +inf except for
// stable laws with index < 2.
double max_moment_order(const LevyDriverSpec& spec);

// All built-in drivers have E log(1 + |L(1)|) finite.
bool has_finite_log_moment(const LevyDriverSpec& spec);

// Mean and variance of L(1); variance is +inf for heavy-tailed stable laws
// and mean is 0 for them by symmetry.
struct UnitMoments {
  double mean = 0.0;
  double variance = 0.0;
};
UnitMoments unit_moments(const LevyDriverSpec& spec);

// Psi^L_1(theta) = log E exp(i theta L(1)), continuous branch.
std::complex<double> unit_levy_exponent(const LevyDriverSpec& spec, double theta);

// Exact draw from the law of L(dt). dt == 0 returns 0.
double sample_increment(const LevyDriverSpec& spec, double dt, RandomStream& rng);

// Values of a two-sided Levy process at the points of a grid whose consecutive
// spacings are `lengths` and whose point `origin` sits at time 0.
//
// The nonnegative half is drawn left to right from `rng`; the negative half
// is drawn right to left from a stream split off `rng` beforehand, so
// L(t) = -L2((-t)-) is realized by an independent copy.
std::vector<double> sample_two_sided_values(const LevyDriverSpec& spec,
                                            std::span<const double> lengths,
                                            std::size_t origin, RandomStream& rng);

// Throws Error(GridMissingOrigin) unless the grid contains 0.
SamplePath sample_two_sided(const LevyDriverSpec& spec, const TimeGrid& grid,
                            RandomStream& rng);

}  // namespace dilastab
