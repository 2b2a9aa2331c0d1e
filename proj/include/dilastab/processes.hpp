#pragma once

#include <span>
#include <vector>

#include "dilastab/drivers.hpp"
#include "dilastab/error.hpp"
#include "dilastab/params.hpp"
#include "dilastab/path.hpp"
#include "dilastab/random.hpp"
#include "dilastab/validation.hpp"

namespace dilastab {

// Discretization of the random integral int_{-inf}^{log t} e^{uH} dY_u.
struct Discretization {
  // Uniform log-time steps per unit; requested times are inserted exactly.
  int refine = 128;
  // Scale below which the neglected tail int_{-inf}^{u_min} is dropped.
  double tail_tol = 1e-4;
};

// Thrown when a simulation is requested for parameters the validator rejects.
class InadmissibleParamsError : public Error {
 public:
  explicit InadmissibleParamsError(AdmissibilityVerdict verdict);
  const AdmissibilityVerdict& verdict() const noexcept { return verdict_; }

 private:
  AdmissibilityVerdict verdict_;
};

// Scale of the neglected tail int_{-inf}^{u} e^{vH} dY_v: standard deviation
// plus absolute mean for finite-variance drivers, stable scale for
// heavy-tailed ones.
double tail_scale(const LevyDriverSpec& spec, const DilationParams& params, double u);

// Largest u_min on the 1/refine lattice with tail_scale(u_min) < tail_tol and
// u_min < upper.
double truncation_log_time(const LevyDriverSpec& spec, const DilationParams& params,
                           const Discretization& disc, double upper);

// Lattice k/refine on [u_min, max(u_max, 0)] merged with `inserted`; lattice
// points closer than the grid match tolerance to an inserted point are
// replaced by it. Always contains 0.
TimeGrid refined_log_grid(double u_min, double u_max, int refine,
                          std::span<const double> inserted);

// One realization of the background process Y = L o tau_delta on a log-time
// grid together with X_{e^u} = int_{u_0}^{u} e^{vH} dY_v on the image grid.
struct DilativeRealization {
  SamplePath background;  // role Y, log-time grid, Y(0) = 0
  SamplePath process;     // role X, grid {e^{u_j}}
};

// Samples Y on `log_grid` (which must contain 0) using exact increments of L
// over [tau(u_j), tau(u_{j+1})].
SamplePath sample_background(const LevyDriverSpec& spec, double delta,
                             const TimeGrid& log_grid, RandomStream& rng);

// X_{e^{u_k}} = sum_{j<k} e^{u_j H} (Y_{u_{j+1}} - Y_{u_j}), with X = 0 at the
// first grid point. Role X on grid {e^{u_j}}.
SamplePath integrate_background(const SamplePath& background, const DilationParams& params);

DilativeRealization simulate_realization(const LevyDriverSpec& spec,
                                         const DilationParams& params,
                                         std::span<const double> log_times,
                                         const Discretization& disc, RandomStream& rng);

// X at {0} followed by out_times (all > 0). The degenerate case alpha ==
// delta/2 is sampled directly as L(t^delta / (e^delta - 1)).
// Throws InadmissibleParamsError or Error(NonPositiveTime).
SamplePath simulate_dilative(const LevyDriverSpec& spec, const DilationParams& params,
                             const TimeGrid& out_times, const Discretization& disc,
                             RandomStream& rng);

// Y_u = int_1^{e^u} t^{-H} dX_t on the log image of x's grid. A leading t = 0
// point is skipped. Throws Error(GridMissingUnit) if t = 1 is absent.
SamplePath extract_background(const SamplePath& x, const DilationParams& params);

// V_u = e^{-Hu} X_{e^u} on grid {log t_j}. Throws Error(NonPositiveTime).
SamplePath lamperti_transform(const SamplePath& x, const DilationParams& params);

// X_{e^u} = e^{Hu} V_u on grid {e^{u_j}}, optionally preceded by X_0 = 0.
SamplePath lamperti_inverse(const SamplePath& v, const DilationParams& params,
                            bool prepend_origin = false);

// V_t = e^{lambda t} (v0 + int_0^t e^{-lambda s} dY_s) on grid points of y
// between a and b. The grid of y must contain 0.
SamplePath ou_evolve(double v0, const SamplePath& y, double lambda, double a, double b);

// V_t = int_{-inf}^t e^{(u-t)H} dY_u at log times `out_times`, all built from
// one shared realization of Y. Requires delta != 0 (Error(DegenerateDelta)).
SamplePath ou_from_integral(const LevyDriverSpec& spec, const DilationParams& params,
                            const TimeGrid& out_times, const Discretization& disc,
                            RandomStream& rng);

// Same, but also returns the shared realization.
struct OuRealization {
  SamplePath ou;
  DilativeRealization realization;
};
OuRealization ou_realization(const LevyDriverSpec& spec, const DilationParams& params,
                             const TimeGrid& out_times, const Discretization& disc,
                             RandomStream& rng);

// Z_{e^u} = V_u.
SamplePath reparam_time_stable(const SamplePath& v);
// V_{log t} = Z_t.
SamplePath reparam_time_stable_inverse(const SamplePath& z);
// D_{e^{delta u}} = V_u. Throws Error(DegenerateDelta) for delta == 0.
SamplePath reparam_idt(const SamplePath& v, double delta);
// V_{log(t)/delta} = D_t.
SamplePath reparam_idt_inverse(const SamplePath& d, double delta);

}  // namespace dilastab
