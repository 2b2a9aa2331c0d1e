#include "dilastab/random.hpp"

#include <cmath>

namespace dilastab {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return mix64(mix64(master_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

double RandomStream::uniform() {
  // 53 random bits, shifted to the cell midpoint so 0 and 1 never occur.
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double RandomStream::normal() { return normal_(engine_); }

double RandomStream::exponential() { return -std::log(uniform()); }

std::uint64_t RandomStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

double RandomStream::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

std::uint64_t RandomStream::binomial(std::uint64_t trials, double p) {
  if (trials == 0) return 0;
  std::binomial_distribution<std::uint64_t> dist(trials, p);
  return dist(engine_);
}

RandomStream RandomStream::split() { return RandomStream(mix64(engine_() ^ 0xd1b54a32d192ed03ULL)); }

}  // namespace dilastab
