#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dilastab/drivers.hpp"
#include "dilastab/params.hpp"

namespace dilastab {

enum class Admissibility {
  // delta > 0, alpha > delta/2.
  ConditionA,
  // delta < 0, alpha > -delta/2, and the driver has a finite moment of some
  // order gamma > -delta/(alpha + delta/2).
  ConditionB,
  // delta == 0, alpha > 0, finite log moment.
  Selfsimilar,
  // delta > 0, alpha == delta/2: X_t = L(t^delta / (e^delta - 1)).
  DegenerateEqual,
  Inadmissible,
};

std::string_view to_string(Admissibility status);

struct AdmissibilityVerdict {
  Admissibility status = Admissibility::Inadmissible;
  // Moment order certified for ConditionB.
  std::optional<double> gamma;
  // Lower bound -delta/(alpha + delta/2) whenever delta < 0 and alpha > -delta/2.
  std::optional<double> required_gamma;
  std::string reason;

  bool admissible() const noexcept { return status != Admissibility::Inadmissible; }
};

// Tolerance for the boundary alpha == delta/2.
inline constexpr double kBoundaryTolerance = 1e-12;

// Total over all real (alpha, delta); inadmissibility is a verdict, not an
// error.
AdmissibilityVerdict admissibility(const DilationParams& params, const LevyDriverSpec& spec);

// -delta / (alpha + delta/2). Throws Error(WrongRegime) unless delta < 0 and
// alpha > -delta/2.
double required_moment_order(const DilationParams& params);

// S_kappa = sum_{k=0}^{kappa} a^{-k beta} sum_{l=1}^{a^k b} |X_l| for
// kappa = 0..levels. Throws Error(NotEnoughSamples) if fewer than
// a^levels * b samples are given.
std::vector<double> cascade_partial_sums(std::span<const double> samples, int a, int b,
                                         double beta, int levels);

}  // namespace dilastab
