#include "dilastab/timechange.hpp"

#include <cmath>
#include <sstream>

#include "dilastab/error.hpp"

namespace dilastab {

namespace {

bool is_zero_delta(double delta) { return std::abs(delta) < kZeroDelta; }

}  // namespace

double tau(double delta, double t) {
  if (is_zero_delta(delta)) return t;
  return std::expm1(delta * t) / std::expm1(delta);
}

double tau_inv(double delta, double s) {
  if (is_zero_delta(delta)) return s;
  const double arg = s * std::expm1(delta);
  if (!(arg > -1.0) || !std::isfinite(arg)) {
    std::ostringstream os;
    os << "s = " << s << " is outside the range of tau_" << delta;
    throw Error(ErrorCode::TimeChangeRange, os.str());
  }
  return std::log1p(arg) / delta;
}

double tau_density(double delta, double u) {
  if (is_zero_delta(delta)) return 1.0;
  return delta * std::exp(delta * u) / std::expm1(delta);
}

double tau_increment(double delta, double u, double du) {
  if (is_zero_delta(delta)) return du;
  return std::exp(delta * u) * tau(delta, du);
}

double tau_scale(double delta) {
  if (is_zero_delta(delta)) return 1.0;
  return delta / std::expm1(delta);
}

}  // namespace dilastab
