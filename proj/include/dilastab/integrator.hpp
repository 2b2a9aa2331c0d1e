#pragma once

#include <functional>
#include <vector>

#include "dilastab/path.hpp"

namespace dilastab {

using WeightFn = std::function<double(double)>;

// Left-endpoint Riemann-Stieltjes sum
//   sum_j weight(u_j) (Y(u_{j+1}) - Y(u_j))
// over consecutive grid points of `path` in [a, b]. For a > b the orientation
// is reversed: int_a^b = -int_b^a. Throws Error(OffGrid) if a or b is not a
// grid point.
double rs_integral(const WeightFn& weight, const SamplePath& path, double a, double b);

// int_a^b A dY := A(b) Y_b - A(a) Y_a - int_a^b A'(t) Y_t dt, with the
// Riemann term evaluated by the trapezoidal rule on the grid.
double ibp_integral(const WeightFn& A, const WeightFn& A_prime, const SamplePath& path,
                    double a, double b);

// int_{t_anchor}^{t_k} weight dY for every grid point t_k, as one sweep.
// Entries at or after the anchor match rs_integral bit for bit; entries
// before it are accumulated right to left.
std::vector<double> rs_integral_path(const WeightFn& weight, const SamplePath& path,
                                     std::size_t anchor);

}  // namespace dilastab
