#pragma once

#include <cstdint>
#include <random>

namespace dilastab {

// SplitMix64 finalizer; used to turn (seed, index) pairs into well-mixed
// engine seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed of stream `index` under `master_seed`. Depends on nothing else, so an
// ensemble path can be regenerated from (master_seed, index) alone.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

// A single pseudo-random stream. Not thread-safe; give each worker its own.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  // Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  // Exp(1).
  double exponential();
  std::uint64_t poisson(double mean);
  // Gamma(shape, rate 1).
  double gamma(double shape);
  std::uint64_t binomial(std::uint64_t trials, double p);

  // Independent child stream. Advances this stream by one draw.
  RandomStream split();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dilastab
