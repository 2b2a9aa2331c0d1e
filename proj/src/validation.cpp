#include "dilastab/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dilastab/error.hpp"
#include "dilastab/timechange.hpp"

namespace dilastab {

std::string_view to_string(Admissibility status) {
  switch (status) {
    case Admissibility::ConditionA: return "ConditionA";
    case Admissibility::ConditionB: return "ConditionB";
    case Admissibility::Selfsimilar: return "Selfsimilar";
    case Admissibility::DegenerateEqual: return "DegenerateEqual";
    case Admissibility::Inadmissible: return "Inadmissible";
  }
  return "?";
}

namespace {

AdmissibilityVerdict reject(std::string reason) {
  AdmissibilityVerdict v;
  v.status = Admissibility::Inadmissible;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

AdmissibilityVerdict admissibility(const DilationParams& params, const LevyDriverSpec& spec) {
  validate(spec);
  const double alpha = params.alpha;
  const double delta = params.delta;
  if (!std::isfinite(alpha) || !std::isfinite(delta)) {
    return reject("alpha and delta must be finite");
  }

  if (std::abs(delta) < kZeroDelta) {
    if (!(alpha > 0.0)) return reject("selfsimilar case (delta = 0) requires alpha > 0");
    if (!has_finite_log_moment(spec)) {
      return reject("selfsimilar case requires a driver with finite log moment");
    }
    return {Admissibility::Selfsimilar, std::nullopt, std::nullopt, {}};
  }

  if (delta > 0.0) {
    const double gap = alpha - delta / 2.0;
    if (std::abs(gap) <= kBoundaryTolerance * std::max(1.0, std::abs(delta))) {
      return {Admissibility::DegenerateEqual, std::nullopt, std::nullopt, {}};
    }
    if (gap > 0.0) return {Admissibility::ConditionA, std::nullopt, std::nullopt, {}};
    std::ostringstream os;
    os << "delta > 0 requires alpha >= delta/2 (alpha = " << alpha << ", delta/2 = "
       << delta / 2.0 << ")";
    return reject(os.str());
  }

  if (!(alpha + delta / 2.0 > 0.0)) {
    std::ostringstream os;
    os << "delta < 0 requires alpha > -delta/2 (alpha = " << alpha << ", -delta/2 = "
       << -delta / 2.0 << ")";
    return reject(os.str());
  }
  const double required = required_moment_order(params);
  const double available = max_moment_order(spec);
  if (!(available > required)) {
    std::ostringstream os;
    os << "required moment order gamma > " << required
       << " exceeds driver max moment order " << available;
    AdmissibilityVerdict v = reject(os.str());
    v.required_gamma = required;
    return v;
  }
  AdmissibilityVerdict v;
  v.status = Admissibility::ConditionB;
  v.required_gamma = required;
  v.gamma = 0.5 * (required + std::min(available, required + 2.0));
  return v;
}

double required_moment_order(const DilationParams& params) {
  const double alpha = params.alpha;
  const double delta = params.delta;
  if (!(delta < 0.0) || !(alpha + delta / 2.0 > 0.0)) {
    std::ostringstream os;
    os << "required moment order needs delta < 0 and alpha > -delta/2 (alpha = " << alpha
       << ", delta = " << delta << ")";
    throw Error(ErrorCode::WrongRegime, os.str());
  }
  return -delta / (alpha + delta / 2.0);
}

std::vector<double> cascade_partial_sums(std::span<const double> samples, int a, int b,
                                         double beta, int levels) {
  if (a < 2 || b < 1 || !(beta > 1.0) || levels < 0) {
    throw Error(ErrorCode::InvalidArgument, "cascade needs a >= 2, b >= 1, beta > 1, K >= 0");
  }
  const double needed = std::pow(static_cast<double>(a), levels) * b;
  if (needed > static_cast<double>(samples.size())) {
    std::ostringstream os;
    os << "cascade with a = " << a << ", b = " << b << ", K = " << levels << " needs "
       << needed << " samples, got " << samples.size();
    throw Error(ErrorCode::NotEnoughSamples, os.str());
  }

  std::vector<double> partial(static_cast<std::size_t>(levels) + 1);
  double abs_sum = 0.0;
  std::size_t consumed = 0;
  std::size_t block = static_cast<std::size_t>(b);
  double total = 0.0;
  for (int k = 0; k <= levels; ++k) {
    for (; consumed < block; ++consumed) abs_sum += std::abs(samples[consumed]);
    total += std::pow(static_cast<double>(a), -k * beta) * abs_sum;
    partial[static_cast<std::size_t>(k)] = total;
    block *= static_cast<std::size_t>(a);
  }
  return partial;
}

}  // namespace dilastab
