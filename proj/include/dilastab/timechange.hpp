#pragma once

namespace dilastab {

// |delta| below this is treated as delta == 0, where the time change is the
// identity.
inline constexpr double kZeroDelta = 1e-12;

// tau_delta(t) = (e^{delta t} - 1) / (e^delta - 1); tau_0(t) = t.
double tau(double delta, double t);

// Inverse of tau. Throws Error(TimeChangeRange) if s is outside the range of
// tau_delta: s > -1/(e^delta - 1) for delta > 0, s < 1/(1 - e^delta) for
// delta < 0.
double tau_inv(double delta, double s);

// Derivative delta e^{delta u} / (e^delta - 1).
double tau_density(double delta, double u);

// tau(u + du) - tau(u), evaluated through the cocycle identity
// tau(u + du) = tau(u) + e^{delta u} tau(du) so no cancellation occurs.
double tau_increment(double delta, double u, double du);

// delta / (e^delta - 1), with limit 1 at delta == 0.
double tau_scale(double delta);

struct TimeChange {
  double delta = 0.0;

  double operator()(double t) const { return tau(delta, t); }
  double inverse(double s) const { return tau_inv(delta, s); }
  double density(double u) const { return tau_density(delta, u); }
};

}  // namespace dilastab
