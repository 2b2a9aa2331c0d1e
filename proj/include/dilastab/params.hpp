#pragma once

namespace dilastab {

// Scaling exponents of an (alpha, delta)-dilatively stable process.
struct DilationParams {
  double alpha = 1.0;
  double delta = 0.0;

  // Exponent of the integrand e^{uH}.
  double hurst() const noexcept { return alpha - delta / 2.0; }
  // Rate of the associated OU-type process; always equals -hurst().
  double ou_rate() const noexcept { return delta / 2.0 - alpha; }
};

}  // namespace dilastab
