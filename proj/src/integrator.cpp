#include "dilastab/integrator.hpp"

#include "dilastab/error.hpp"

namespace dilastab {

double rs_integral(const WeightFn& weight, const SamplePath& path, double a, double b) {
  const std::size_t ia = path.grid().index_of(a);
  const std::size_t ib = path.grid().index_of(b);
  if (ia > ib) return -rs_integral(weight, path, b, a);
  const auto y = path.values();
  double sum = 0.0;
  for (std::size_t j = ia; j < ib; ++j) sum += weight(path.time(j)) * (y[j + 1] - y[j]);
  return sum;
}

double ibp_integral(const WeightFn& A, const WeightFn& A_prime, const SamplePath& path,
                    double a, double b) {
  const std::size_t ia = path.grid().index_of(a);
  const std::size_t ib = path.grid().index_of(b);
  if (ia > ib) return -ibp_integral(A, A_prime, path, b, a);
  if (ia == ib) return 0.0;
  const auto y = path.values();
  double riemann = 0.0;
  double left = A_prime(path.time(ia)) * y[ia];
  for (std::size_t j = ia; j < ib; ++j) {
    const double right = A_prime(path.time(j + 1)) * y[j + 1];
    riemann += 0.5 * (path.time(j + 1) - path.time(j)) * (left + right);
    left = right;
  }
  return A(path.time(ib)) * y[ib] - A(path.time(ia)) * y[ia] - riemann;
}

std::vector<double> rs_integral_path(const WeightFn& weight, const SamplePath& path,
                                     std::size_t anchor) {
  if (anchor >= path.size()) throw Error(ErrorCode::OffGrid, "anchor index outside the grid");
  const auto y = path.values();
  std::vector<double> out(path.size(), 0.0);
  double sum = 0.0;
  for (std::size_t j = anchor; j + 1 < path.size(); ++j) {
    sum += weight(path.time(j)) * (y[j + 1] - y[j]);
    out[j + 1] = sum;
  }
  sum = 0.0;
  for (std::size_t j = anchor; j-- > 0;) {
    sum -= weight(path.time(j)) * (y[j + 1] - y[j]);
    out[j] = sum;
  }
  return out;
}

}  // namespace dilastab
