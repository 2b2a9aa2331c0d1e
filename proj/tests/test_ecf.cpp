#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dilastab/ecf.hpp"
#include "dilastab/error.hpp"
#include "oracles.hpp"

using namespace dilastab;

namespace {

PathEnsemble constant_ensemble(std::vector<double> grid, std::vector<double> values) {
  return PathEnsemble(TimeGrid(std::move(grid)), PathRole::X, std::move(values));
}

EnsembleConfig gaussian_config() {
  EnsembleConfig c;
  c.driver = GaussianDriver{};
  c.params = {1.0, 1.0};
  c.out_times = {0.5, 1.0, 2.0};
  return c;
}

}  // namespace

TEST(Ensemble, ReproducibleAndThreadIndependent) {
  const auto c = gaussian_config();
  const PathEnsemble a = simulate_ensemble(c, 50, 9, 1);
  const PathEnsemble b = simulate_ensemble(c, 50, 9, 4);
  ASSERT_EQ(a.values().size(), b.values().size());
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_EQ(a.size(), 50u);
  EXPECT_EQ(a.grid().size(), 4u);
}

TEST(Ensemble, SinglePathEqualsDirectSimulation) {
  const auto c = gaussian_config();
  const PathEnsemble e = simulate_ensemble(c, 1, 4);
  RandomStream rng(derive_seed(4, 0));
  const SamplePath x =
      simulate_dilative(c.driver, c.params, TimeGrid(c.out_times), c.disc, rng);
  EXPECT_TRUE(std::equal(x.values().begin(), x.values().end(), e.path(0).begin()));
}

TEST(Ensemble, DisjointSeedsAreUncorrelated) {
  const auto c = gaussian_config();
  const std::size_t n = 2000;
  const PathEnsemble a = simulate_ensemble(c, n, 1);
  const PathEnsemble b = simulate_ensemble(c, n, 2);
  const std::size_t i = a.grid().index_of(1.0);
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = a.value(k, i);
    const double y = b.value(k, i);
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  const double dn = static_cast<double>(n);
  const double cov = sab / dn - sa * sb / (dn * dn);
  const double corr = cov / std::sqrt((saa / dn - sa * sa / (dn * dn)) * (sbb / dn - sb * sb / (dn * dn)));
  EXPECT_LT(std::abs(corr), 3.0 / std::sqrt(dn));
}

TEST(Ensemble, InadmissibleIsPropagated) {
  auto c = gaussian_config();
  c.driver = SymmetricStableDriver{1.5, 1.0};
  c.params = {1.0, -1.0};
  EXPECT_THROW(simulate_ensemble(c, 3, 1), InadmissibleParamsError);
}

TEST(Ecf, ZeroThetasGiveOne) {
  const auto e = simulate_ensemble(gaussian_config(), 20, 1);
  const std::vector<double> t{0.5, 2.0};
  const std::vector<double> th{0.0, 0.0};
  const EcfEstimate est = estimate_ecf(e, t, th);
  EXPECT_EQ(est.cf_mean, std::complex<double>(1.0, 0.0));
  EXPECT_EQ(est.cf_se, 0.0);
  EXPECT_EQ(est.logcf, std::complex<double>(0.0, 0.0));
}

TEST(Ecf, ConjugateSymmetryIsExact) {
  const auto e = simulate_ensemble(gaussian_config(), 100, 1);
  const std::vector<double> t{1.0};
  const std::vector<double> plus{0.7};
  const std::vector<double> minus{-0.7};
  const auto a = estimate_ecf(e, t, plus);
  const auto b = estimate_ecf(e, t, minus);
  EXPECT_EQ(a.cf_mean, std::conj(b.cf_mean));
}

TEST(Ecf, PermutationInvariant) {
  const auto e = simulate_ensemble(gaussian_config(), 64, 1);
  const std::size_t w = e.grid().size();
  std::vector<double> shuffled;
  for (std::size_t n = e.size(); n-- > 0;) {
    shuffled.insert(shuffled.end(), e.path(n).begin(), e.path(n).end());
  }
  const PathEnsemble r(e.grid(), e.role(), shuffled);
  ASSERT_EQ(r.path(0)[w - 1], e.path(63)[w - 1]);
  const std::vector<double> t{1.0};
  const std::vector<double> th{0.9};
  const auto a = estimate_ecf(e, t, th);
  const auto b = estimate_ecf(r, t, th);
  EXPECT_NEAR(a.cf_mean.real(), b.cf_mean.real(), 1e-14);
  EXPECT_NEAR(a.cf_mean.imag(), b.cf_mean.imag(), 1e-14);
}

TEST(Ecf, ComponentErrorsAddUpToTotal) {
  const auto e = simulate_ensemble(gaussian_config(), 500, 3);
  const std::vector<double> t{0.5, 2.0};
  const std::vector<double> th{0.4, 0.6};
  const auto est = estimate_ecf(e, t, th);
  EXPECT_NEAR(est.logcf_se_re * est.logcf_se_re + est.logcf_se_im * est.logcf_se_im,
              est.logcf_se * est.logcf_se, 1e-12);
  EXPECT_LE(std::abs(est.cf_mean), 1.0);
}

TEST(Ecf, OffGrid) {
  const auto e = simulate_ensemble(gaussian_config(), 5, 1);
  const std::vector<double> t{0.7};
  const std::vector<double> th{1.0};
  try {
    estimate_ecf(e, t, th);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::OffGrid);
  }
}

TEST(LogCf, GaussianEnsembleMatchesVariance) {
  const auto e = simulate_ensemble(gaussian_config(), 4000, 8);
  const std::vector<double> t{1.0};
  const std::vector<double> dir{1.0};
  const auto ray = estimate_log_cf(e, t, dir, 8);
  ASSERT_EQ(ray.size(), 8u);
  const double var = 1.0 / (2.0 * (std::numbers::e - 1.0));
  const auto& last = ray.back();
  EXPECT_NEAR(last.logcf.real(), -0.5 * var, 3.5 * last.logcf_se_re);
  EXPECT_NEAR(last.logcf.imag(), 0.0, 3.5 * last.logcf_se_im);
}

TEST(LogCf, DriftPhaseIsUnwrapped) {
  // X_t = mu t on every path: logcf = i mu t theta, well past pi.
  const double mu = 3.0;
  const std::vector<double> grid{0.0, 1.0, 2.0};
  std::vector<double> values;
  for (int n = 0; n < 100; ++n) values.insert(values.end(), {0.0, mu, 2 * mu});
  const PathEnsemble e = constant_ensemble(grid, values);
  const std::vector<double> t{2.0};
  const std::vector<double> dir{2.0};
  const auto ray = estimate_log_cf(e, t, dir, 32);
  EXPECT_NEAR(ray.back().logcf.imag(), mu * 2.0 * 2.0, 1e-12);
  EXPECT_NEAR(ray.back().logcf.real(), 0.0, 1e-14);
  EXPECT_NEAR(ray.front().logcf.imag(), mu * 2.0 * 2.0 / 32, 1e-12);
}

TEST(LogCf, LowMagnitudeAborts) {
  const auto e = simulate_ensemble(gaussian_config(), 400, 8);
  const std::vector<double> t{2.0};
  const std::vector<double> dir{20.0};
  try {
    estimate_log_cf(e, t, dir, 10);
    FAIL();
  } catch (const LowMagnitudeError& err) {
    EXPECT_EQ(err.code(), ErrorCode::LowMagnitude);
    EXPECT_GT(err.r(), 0.0);
    EXPECT_LT(err.magnitude(), err.floor());
    EXPECT_EQ(err.floor(), magnitude_floor(400));
  }
  EXPECT_EQ(magnitude_floor(100), 0.5);
  EXPECT_EQ(magnitude_floor(10000), 0.1);
}

TEST(Oracle, GaussianExample) {
  const auto psi = oracle_log_cf(GaussianDriver{1.0, 0.0}, {1.0, 1.0}, 1.0, 1.0);
  EXPECT_NEAR(psi.real(), -1.0 / (4.0 * (std::numbers::e - 1.0)), 1e-15);
  EXPECT_NEAR(psi.real(), -0.145494, 1e-6);
  EXPECT_EQ(psi.imag(), 0.0);
  const auto quad = oracle::exponent_by_quadrature(
      [](double th) { return std::complex<double>(-0.5 * th * th, 0.0); }, 1.0, 1.0, 1.0, 1.0);
  EXPECT_NEAR(psi.real(), quad.real(), 1e-10);
}

TEST(Oracle, StableExampleByQuadrature) {
  const auto psi = oracle_log_cf(SymmetricStableDriver{1.0, 1.0}, {1.0, 1.0}, 2.0, 1.0);
  const auto quad = oracle::exponent_by_quadrature(
      [](double th) { return std::complex<double>(-std::abs(th), 0.0); }, 1.0, 1.0, 2.0, 1.0);
  EXPECT_NEAR(psi.real(), quad.real(), 1e-9);
  EXPECT_NEAR(psi.real(), -1.0973858, 1e-7);
}

TEST(Oracle, MatchesQuadratureAcrossParameters) {
  struct Case {
    LevyDriverSpec spec;
    DilationParams params;
  };
  const std::vector<Case> cases = {
      {GaussianDriver{2.0, 0.5}, {1.0, 1.0}},
      {GaussianDriver{1.0, -1.0}, {0.8, -0.4}},
      {SymmetricStableDriver{1.5, 1.0}, {1.0, 0.5}},
      {SymmetricStableDriver{0.8, 2.0}, {1.5, -0.3}},
      {SymmetricStableDriver{1.2, 1.0}, {0.7, 0.0}},
  };
  for (const auto& c : cases) {
    for (double t : {0.4, 1.0, 3.0}) {
      for (double theta : {-0.8, 0.3, 1.7}) {
        const auto psi = oracle_log_cf(c.spec, c.params, t, theta);
        const auto quad = oracle::exponent_by_quadrature(
            [&](double th) { return unit_levy_exponent(c.spec, th); }, c.params.alpha,
            c.params.delta, t, theta, -200.0);
        EXPECT_NEAR(psi.real(), quad.real(), 1e-8 * std::max(1.0, std::abs(quad.real())));
        EXPECT_NEAR(psi.imag(), quad.imag(), 1e-8 * std::max(1.0, std::abs(quad.imag())));
      }
    }
  }
}

TEST(Oracle, ZeroAndDomain) {
  EXPECT_EQ(oracle_log_cf(GaussianDriver{}, {1.0, 1.0}, 2.0, 0.0), std::complex<double>(0, 0));
  EXPECT_EQ(oracle_log_cf(GaussianDriver{}, {1.0, 1.0}, 0.0, 1.0), std::complex<double>(0, 0));
  for (auto f : {+[] { oracle_log_cf(GaussianDriver{}, {-1.0, 0.0}, 1.0, 1.0); },
                 +[] { oracle_log_cf(GammaDriver{}, {1.0, 1.0}, 1.0, 1.0); },
                 +[] { oracle_log_cf(GaussianDriver{}, {1.0, 1.0}, -1.0, 1.0); }}) {
    try {
      f();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OracleOutOfDomain);
    }
  }
}

TEST(Oracle, JointFromIncrementsBruteForce) {
  // Gaussian: Psi = -1/2 Var(sum theta_j X_{t_j}) with Cov(X_s, X_t) = Var X_{min}.
  const GaussianDriver g{1.0, 0.0};
  const DilationParams p{1.0, 0.6};
  const std::vector<double> t{2.0, 0.5, 1.0};
  const std::vector<double> th{0.3, -0.7, 1.1};
  double var = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      var += th[i] * th[j] *
             oracle::variance_by_quadrature(1.0, p.alpha, p.delta, std::min(t[i], t[j]));
    }
  }
  EXPECT_NEAR(oracle_log_cf_joint(g, p, t, th).real(), -0.5 * var, 1e-10);
}

TEST(Oracle, DilativeIdentity) {
  const SymmetricStableDriver s{1.3, 0.7};
  const DilationParams p{1.1, 0.4};
  const double T = 2.7;
  const double t = 0.8;
  const double theta = -1.3;
  const auto lhs = oracle_log_cf(s, p, T * t, theta);
  const auto rhs = std::pow(T, p.delta) * oracle_log_cf(s, p, t, std::pow(T, p.hurst()) * theta);
  EXPECT_NEAR(lhs.real(), rhs.real(), 1e-14 * std::abs(lhs.real()));
}

TEST(Scaling, LawArithmetic) {
  const auto d = ScalingLaw::dilative(1.0, 1.0, 2.0);
  EXPECT_EQ(d.lhs_times(std::vector<double>{0.5})[0], 1.0);
  EXPECT_DOUBLE_EQ(d.rhs_thetas(std::vector<double>{1.0})[0], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(d.factor(), 2.0);
  EXPECT_DOUBLE_EQ(ScalingLaw::translative(0.5, 2.0).factor(), std::exp(1.0));
  EXPECT_DOUBLE_EQ(ScalingLaw::time_stable(0.5, 4.0).lhs_times(std::vector<double>{1.0})[0],
                   16.0);
  EXPECT_DOUBLE_EQ(ScalingLaw::idt(3.0).lhs_times(std::vector<double>{1.0})[0], 3.0);
  const auto inc = TestPoint::increments(0.5, 1.0, 0.4, 0.1);
  EXPECT_EQ(inc.thetas, (std::vector<double>{0.30000000000000004, 0.1}));
}

TEST(Scaling, ZeroProcessPassesWithZeroScores) {
  std::vector<double> values(100 * 4, 0.0);
  const PathEnsemble e = constant_ensemble({0.0, 0.5, 1.0, 2.0}, values);
  const std::vector<TestPoint> pts{TestPoint::single(0.5, 1.0), TestPoint::single(1.0, 2.0),
                                   TestPoint::increments(0.5, 1.0, 1.0, 0.5)};
  const auto r = check_scaling(e, ScalingLaw::dilative(1.0, 1.0, 2.0), pts);
  EXPECT_EQ(r.pass_fraction, 1.0);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.z_re, 0.0);
    EXPECT_EQ(row.z_im, 0.0);
  }
}

TEST(Scaling, TranslativeWithZeroShiftIsIdentical) {
  PathEnsemble v_ens(TimeGrid({0.0}), PathRole::V, {0.0});
  {
    std::vector<double> values;
    const TimeGrid out({-0.5, 0.0, 0.5});
    for (std::uint64_t n = 0; n < 300; ++n) {
      RandomStream rng(derive_seed(3, n));
      const auto v = ou_from_integral(GaussianDriver{}, {1.0, 1.0}, out, {}, rng);
      values.insert(values.end(), v.values().begin(), v.values().end());
    }
    v_ens = PathEnsemble(out, PathRole::V, values);
  }
  const std::vector<TestPoint> pts{TestPoint::single(-0.5, 1.0), TestPoint::single(0.5, 0.7)};
  const auto r = check_scaling(v_ens, ScalingLaw::translative(1.0, 0.0), pts);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.lhs, row.rhs);
    EXPECT_EQ(row.z_re, 0.0);
    EXPECT_EQ(row.z_im, 0.0);
  }
}

TEST(Scaling, GaussianDilativeEnsembleAndOracle) {
  EnsembleConfig c = gaussian_config();
  c.out_times = {0.5, 1.0, 2.0};
  const auto e = simulate_ensemble(c, 4000, 17);
  const std::vector<TestPoint> pts{TestPoint::single(0.5, 0.5), TestPoint::single(1.0, 1.0),
                                   TestPoint::increments(0.5, 1.0, 0.5, 0.25)};
  const auto r = check_scaling(e, ScalingLaw::dilative(1.0, 1.0, 2.0), pts);
  EXPECT_EQ(r.pass_fraction, 1.0);
  for (const auto& row : r.rows) {
    ASSERT_TRUE(row.oracle.has_value());
    EXPECT_LT(std::abs(row.oracle_z_re), 3.5);
  }
}

TEST(Scaling, TransportedPointsGiveSameScores) {
  EnsembleConfig c = gaussian_config();
  const auto x = simulate_ensemble(c, 2000, 5);
  const std::vector<TestPoint> pts{TestPoint::single(0.5, 0.8), TestPoint::single(1.0, 0.6),
                                   TestPoint::increments(0.5, 1.0, 0.6, 0.3)};
  const auto rx = check_scaling(x, ScalingLaw::dilative(1.0, 1.0, 2.0), pts);
  const std::vector<TransformStep> lamperti{TransformStep::Lamperti};
  const auto v = transform_ensemble(x, lamperti, c.params);
  EXPECT_EQ(v.role(), PathRole::V);
  const auto vpts = dilative_to_translative(pts, c.params, 2.0);
  const auto rv = check_scaling(v, ScalingLaw::translative(1.0, std::log(2.0)), vpts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_NEAR(rx.rows[i].z_re, rv.rows[i].z_re, 1e-9);
    EXPECT_NEAR(rx.rows[i].z_im, rv.rows[i].z_im, 1e-9);
  }
}

TEST(Transforms, RoleChecks) {
  const SamplePath v(TimeGrid({0.0, 1.0}), {0.0, 1.0}, PathRole::V);
  const std::vector<TransformStep> bad{TransformStep::Lamperti};
  EXPECT_THROW(apply_transforms(v, bad, {1.0, 1.0}), Error);
  EXPECT_EQ(parse_transform("time_stable"), TransformStep::TimeStable);
  EXPECT_FALSE(parse_transform("nope").has_value());
}
