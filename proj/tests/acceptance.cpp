// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dilastab/commands.hpp"
#include "dilastab/config.hpp"
#include "dilastab/ecf.hpp"
#include "dilastab/processes.hpp"
#include "dilastab/validation.hpp"
#include "oracles.hpp"

using namespace dilastab;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body,
         double time_limit_s = 0.0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0.0 && secs > time_limit_s) {
    out.pass = false;
    out.detail += " (over time limit)";
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// Shared Gaussian ensemble of criteria 2, 3, 6 and 7.
const DilationParams kGaussParams{1.0, 1.0};
const double kT = 2.0;
constexpr std::size_t kPaths = 10000;
constexpr std::uint64_t kSeed = 20240601;

EnsembleConfig gaussian_config() {
  EnsembleConfig c;
  c.driver = GaussianDriver{1.0, 0.0};
  c.params = kGaussParams;
  c.out_times = {0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  return c;
}

std::vector<TestPoint> gaussian_points() {
  std::vector<TestPoint> pts;
  for (double t : {0.5, 1.0, 1.5}) {
    for (double th : {0.25, 0.5, 1.0}) pts.push_back(TestPoint::single(t, th));
  }
  pts.push_back(TestPoint::single(0.75, 0.5));
  pts.push_back(TestPoint::single(0.75, 1.0));
  pts.push_back(TestPoint::increments(0.5, 1.0, 0.5, 0.25));
  return pts;
}

const PathEnsemble& gaussian_ensemble() {
  static const PathEnsemble ens = simulate_ensemble(gaussian_config(), kPaths, kSeed, 4);
  return ens;
}

Outcome criterion_oracle_identity() {
  RandomStream rng(1);
  double worst = 0.0;
  int checked = 0;
  while (checked < 200) {
    const double alpha = 0.1 + 2.9 * rng.uniform();
    const double delta = -2.0 + 4.0 * rng.uniform();
    const DilationParams p{alpha, delta};
    const bool stable = checked % 2 == 1;
    const LevyDriverSpec spec = stable ? LevyDriverSpec{SymmetricStableDriver{
                                             0.2 + 1.8 * rng.uniform(), 0.1 + 2 * rng.uniform()}}
                                       : LevyDriverSpec{GaussianDriver{0.1 + 2 * rng.uniform(), 0.0}};
    const double t = 0.05 + 5 * rng.uniform();
    const double T = 0.05 + 5 * rng.uniform();
    const double theta = -3.0 + 6.0 * rng.uniform();
    if (!admissibility(p, spec).admissible()) continue;
    const double p_index = stable ? std::get<SymmetricStableDriver>(spec).index : 2.0;
    if (!(p_index * p.hurst() + delta > 0.0)) continue;
    const auto lhs = oracle_log_cf(spec, p, T * t, theta);
    const auto rhs = std::pow(T, delta) * oracle_log_cf(spec, p, t, std::pow(T, p.hurst()) * theta);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    ++checked;
  }
  return {worst <= 1e-12, fmt("max relative error %.3g over 200 tuples", worst)};
}

Outcome criterion_gaussian_variance() {
  const PathEnsemble& ens = gaussian_ensemble();
  const std::size_t i = ens.grid().index_of(1.0);
  double s = 0.0;
  double s2 = 0.0;
  for (std::size_t n = 0; n < ens.size(); ++n) {
    s += ens.value(n, i);
    s2 += ens.value(n, i) * ens.value(n, i);
  }
  const double dn = static_cast<double>(ens.size());
  const double mean = s / dn;
  const double var = (s2 - dn * mean * mean) / (dn - 1.0);
  const double expected = 1.0 / (2.0 * (std::numbers::e - 1.0));
  const double quad = oracle::variance_by_quadrature(1.0, 1.0, 1.0, 1.0);
  const double se = expected * std::sqrt(2.0 / (dn - 1.0));
  const double z = (var - expected) / se;
  return {std::abs(z) <= 3.0 && std::abs(quad - expected) < 1e-10,
          fmt("var %.6f vs %.6f (quadrature %.6f)", var, expected, quad) +
              fmt(", z = %.2f", z)};
}

Outcome criterion_dilative_check() {
  const PathEnsemble& ens = gaussian_ensemble();
  const auto pts = gaussian_points();
  const auto good = check_scaling(ens, ScalingLaw::dilative(1.0, 1.0, kT), pts);
  // delta off by 0.5 with H = alpha - delta/2 held fixed.
  const auto bad = check_scaling(ens, ScalingLaw::dilative(0.75, 0.5, kT), pts);
  double worst = 0.0;
  for (const auto& r : good.rows) worst = std::max({worst, std::abs(r.z_re), std::abs(r.z_im)});
  return {pts.size() == 12 && good.pass_fraction >= 0.99 && bad.pass_fraction < 0.5,
          fmt("pass_fraction %.3f (max |z| %.2f), misspecified %.3f", good.pass_fraction, worst,
              bad.pass_fraction)};
}

Outcome criterion_stable() {
  EnsembleConfig c;
  c.driver = SymmetricStableDriver{1.5, 1.0};
  c.params = {1.0, 0.5};
  c.out_times = {0.5, 1.0, 2.0};
  const PathEnsemble ens = simulate_ensemble(c, kPaths, kSeed + 1, 4);
  std::vector<TestPoint> pts;
  for (double t : {0.5, 1.0}) {
    for (double th : {0.25, 0.5, 1.0}) pts.push_back(TestPoint::single(t, th));
  }
  const auto r = check_scaling(ens, ScalingLaw::dilative(1.0, 0.5, kT), pts);
  double worst_oracle = 0.0;
  bool have_oracle = true;
  // Oracle at the base arguments as well as at the scaled ones.
  for (const auto& p : pts) {
    const auto est = estimate_log_cf(ens, p.times, p.thetas, 16).back();
    const auto o = oracle_log_cf(c.driver, c.params, p.times[0], p.thetas[0]);
    worst_oracle = std::max({worst_oracle, std::abs(est.logcf.real() - o.real()) / est.logcf_se_re,
                             std::abs(est.logcf.imag() - o.imag()) / est.logcf_se_im});
  }
  for (const auto& row : r.rows) {
    if (!row.oracle) {
      have_oracle = false;
      continue;
    }
    worst_oracle = std::max({worst_oracle, std::abs(row.oracle_z_re), std::abs(row.oracle_z_im)});
  }
  return {r.pass_fraction >= 0.99 && have_oracle && worst_oracle <= 3.0,
          fmt("pass_fraction %.3f, max oracle |z| %.2f at %.0f points", r.pass_fraction,
              worst_oracle, static_cast<double>(pts.size()))};
}

LevyDriverSpec random_driver(RandomStream& rng) {
  switch (static_cast<int>(rng.uniform() * 4.0)) {
    case 0: return GaussianDriver{0.2 + 2 * rng.uniform(), rng.uniform() - 0.5};
    case 1: return SymmetricStableDriver{0.6 + 1.4 * rng.uniform(), 0.2 + rng.uniform()};
    case 2: return CompoundPoissonDriver{1.0 + 5 * rng.uniform(), GaussianJumps{0.3, 1.0}};
    default: return GammaDriver{0.5 + 2 * rng.uniform(), 1.0 + rng.uniform()};
  }
}

Outcome criterion_round_trip() {
  RandomStream rng(55);
  int configs = 0;
  double worst_ratio = 0.0;
  std::size_t steps = 0;
  while (configs < 100) {
    const LevyDriverSpec spec = random_driver(rng);
    const DilationParams p{0.3 + 2.0 * rng.uniform(), -1.0 + 2.0 * rng.uniform()};
    if (!admissibility(p, spec).admissible() ||
        admissibility(p, spec).status == Admissibility::DegenerateEqual) {
      continue;
    }
    const Discretization disc{16 + static_cast<int>(rng.uniform() * 64), 1e-3};
    std::vector<double> logs{0.0};
    for (int k = 0; k < 3; ++k) logs.push_back(-1.5 + 3.0 * rng.uniform());
    const DilativeRealization real = simulate_realization(spec, p, logs, disc, rng);
    const SamplePath y = extract_background(real.process, p);
    const SamplePath x = integrate_background(y, p);
    // Per-step rounding budget: each step touches the increment, the weight
    // and the running sums on both passes.
    const double h = p.hurst();
    double budget = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k > 0) {
        const double w = std::exp(h * y.time(k - 1));
        budget += 4.0 * kEps *
                  (w * (std::abs(y.value(k)) + std::abs(y.value(k - 1))) +
                   std::abs(real.process.value(k)) + std::abs(real.process.value(k - 1)));
      }
      const double err = std::abs(x.value(k) - real.process.value(k));
      if (err > 0.0) worst_ratio = std::max(worst_ratio, budget > 0 ? err / budget : 1e300);
    }
    steps += x.size();
    ++configs;
  }
  return {worst_ratio <= 1.0,
          fmt("worst error / budget %.3g over 100 configs, %.0f grid points", worst_ratio,
              static_cast<double>(steps))};
}

Outcome criterion_ou() {
  // Flow identity on a shared grid.
  double worst_flow = 0.0;
  for (std::uint64_t n = 0; n < 50; ++n) {
    RandomStream rng(derive_seed(kSeed, n));
    const TimeGrid out({-1.0, -0.5, 0.0, std::log(1.5), std::log(3.0)});
    const OuRealization r = ou_realization(GaussianDriver{}, kGaussParams, out, {}, rng);
    const SamplePath flow = ou_evolve(r.ou.value_at(0.0), r.realization.background,
                                      kGaussParams.ou_rate(), out.front(), out.back());
    for (double t : out.points()) {
      const double scale = std::abs(r.ou.value_at(0.0)) + std::abs(r.ou.value_at(t)) + 1e-300;
      worst_flow = std::max(worst_flow, std::abs(flow.value_at(t) - r.ou.value_at(t)) / scale);
    }
  }
  // Lamperti inverse of the OU ensemble against the direct one.
  const EnsembleConfig c = gaussian_config();
  std::vector<double> logs;
  for (double t : c.out_times) logs.push_back(std::log(t));
  const TimeGrid log_grid(logs);
  std::vector<double> values;
  std::optional<TimeGrid> grid;
  for (std::size_t n = 0; n < kPaths; ++n) {
    RandomStream rng(derive_seed(kSeed, n));
    const SamplePath v = ou_from_integral(c.driver, c.params, log_grid, c.disc, rng);
    const SamplePath x = lamperti_inverse(v, c.params, true);
    if (!grid) grid = x.grid();
    values.insert(values.end(), x.values().begin(), x.values().end());
  }
  const PathEnsemble from_ou(*grid, PathRole::X, std::move(values));
  const auto law = ScalingLaw::dilative(1.0, 1.0, kT);
  const auto direct = check_scaling(gaussian_ensemble(), law, gaussian_points());
  const auto via_ou = check_scaling(from_ou, law, gaussian_points());
  const bool implication = direct.pass_fraction < 0.99 || via_ou.pass_fraction >= 0.99;
  return {worst_flow <= 1e-13 && implication,
          fmt("flow identity max rel err %.3g; dilative pass_fraction direct %.3f, via OU %.3f",
              worst_flow, direct.pass_fraction, via_ou.pass_fraction)};
}

Outcome criterion_transport() {
  const PathEnsemble& x = gaussian_ensemble();
  const auto pts = gaussian_points();
  const auto rx = check_scaling(x, ScalingLaw::dilative(1.0, 1.0, kT), pts);

  const DilationParams& p = kGaussParams;
  const double S = std::log(kT);
  const std::vector<TransformStep> to_v{TransformStep::Lamperti};
  const std::vector<TransformStep> to_z{TransformStep::TimeStable};
  const std::vector<TransformStep> to_d{TransformStep::Idt};
  const PathEnsemble v = transform_ensemble(x, to_v, p);
  const PathEnsemble z = transform_ensemble(v, to_z, p);
  const PathEnsemble d = transform_ensemble(v, to_d, p);

  const auto vpts = dilative_to_translative(pts, p, kT);
  const auto rv = check_scaling(v, ScalingLaw::translative(p.delta, S), vpts);
  const double n = std::exp(p.delta * S);
  const auto rz =
      check_scaling(z, ScalingLaw::time_stable(p.delta, n), translative_to_time_stable(vpts));
  const auto rd = check_scaling(d, ScalingLaw::idt(n), translative_to_idt(vpts, p.delta));

  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (const ScalingReport* r : {&rv, &rz, &rd}) {
      worst = std::max({worst, std::abs(r->rows[i].z_re - rx.rows[i].z_re),
                        std::abs(r->rows[i].z_im - rx.rows[i].z_im)});
    }
  }
  const bool all_pass =
      rv.pass_fraction >= 0.99 && rz.pass_fraction >= 0.99 && rd.pass_fraction >= 0.99;
  return {all_pass && worst <= 1e-9,
          fmt("pass_fraction translative %.3f, time_stable %.3f, idt %.3f", rv.pass_fraction,
              rz.pass_fraction, rd.pass_fraction) +
              fmt("; max |z - z_dilative| %.3g", worst)};
}

Outcome criterion_truth_table() {
  struct Case {
    double alpha;
    double delta;
    LevyDriverSpec spec;
    Admissibility expected;
  };
  const GaussianDriver g;
  const std::vector<Case> cases = {
      {1.0, 1.0, g, Admissibility::ConditionA},
      {1.5, -1.0, SymmetricStableDriver{1.0, 1.0}, Admissibility::Inadmissible},
      {0.5, 1.0, g, Admissibility::DegenerateEqual},
      {1.0, 2.0, g, Admissibility::DegenerateEqual},
      {0.4, 1.0, g, Admissibility::Inadmissible},
      {0.0, 2.0, g, Admissibility::Inadmissible},
      {1.0, 0.0, g, Admissibility::Selfsimilar},
      {0.3, 0.0, SymmetricStableDriver{1.5, 1.0}, Admissibility::Selfsimilar},
      {-1.0, 0.0, g, Admissibility::Inadmissible},
      {0.0, 0.0, g, Admissibility::Inadmissible},
      {1.0, -1.0, g, Admissibility::ConditionB},
      {1.0, -1.0, SymmetricStableDriver{1.5, 1.0}, Admissibility::Inadmissible},
      {1.0, -0.5, SymmetricStableDriver{1.5, 1.0}, Admissibility::ConditionB},
      {1.0, -0.5, SymmetricStableDriver{0.5, 1.0}, Admissibility::Inadmissible},
      {0.5, -1.0, g, Admissibility::Inadmissible},
      {0.3, -1.0, g, Admissibility::Inadmissible},
      {1.0, -1.0, GammaDriver{1.0, 1.0}, Admissibility::ConditionB},
      {1.0, -1.0, CompoundPoissonDriver{1.0, TwoPointJumps{1.0}}, Admissibility::ConditionB},
      {2.0, -1.0, SymmetricStableDriver{1.5, 1.0}, Admissibility::ConditionB},
      {1.0, 1.0, SymmetricStableDriver{0.5, 1.0}, Admissibility::ConditionA},
  };
  int matched = 0;
  bool branches[5] = {};
  std::string misses;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const auto v = admissibility({c.alpha, c.delta}, c.spec);
    bool ok = v.status == c.expected;
    if (v.status == Admissibility::ConditionB) {
      ok = ok && v.gamma && v.required_gamma && *v.gamma > *v.required_gamma &&
           *v.gamma < max_moment_order(c.spec);
    }
    if (ok) {
      ++matched;
      branches[static_cast<int>(v.status)] = true;
    } else {
      misses += " case " + std::to_string(i + 1);
    }
  }
  const auto reject = admissibility({1.0, -1.0}, SymmetricStableDriver{1.5, 1.0});
  const bool stable_reason = reject.required_gamma && *reject.required_gamma == 2.0 &&
                             reject.reason.find("1.5") != std::string::npos;
  const bool all_branches = std::all_of(std::begin(branches), std::end(branches),
                                        [](bool b) { return b; });
  return {matched == 20 && stable_reason && all_branches,
          fmt("%.0f/20 cases, all branches ", matched) + (all_branches ? "yes" : "no") +
              ", stable rejection: " + reject.reason + misses};
}

Outcome criterion_cascade() {
  std::vector<double> gaps;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    RandomStream rng(derive_seed(99, rep));
    std::vector<double> x(1 << 12);
    for (double& v : x) v = rng.normal();
    const auto s = cascade_partial_sums(x, 2, 1, 2.0, 12);
    gaps.push_back(s[12] - s[11]);
  }
  std::nth_element(gaps.begin(), gaps.begin() + 50, gaps.end());
  const double upper = gaps[50];
  std::nth_element(gaps.begin(), gaps.begin() + 49, gaps.end());
  const double median = 0.5 * (gaps[49] + upper);

  const std::vector<double> ones(1 << 12, 1.0);
  const auto s = cascade_partial_sums(ones, 2, 1, 2.0, 12);
  bool exact = true;
  for (int k = 0; k <= 12; ++k) exact = exact && s[k] == 2.0 - std::ldexp(1.0, -k);
  return {median < 1e-2 && exact,
          fmt("median gap at K=12 %.3g; constant case exact: ", median) + (exact ? "yes" : "no")};
}

Outcome criterion_determinism() {
  RunConfig c = run_config_from_json(nlohmann::json::parse(R"({
    "driver": {"kind": "symmetric_stable", "index": 1.5, "scale": 1},
    "params": {"alpha": 1, "delta": 0.5},
    "grid": {"t_min": 0.5, "t_max": 2, "points": 5, "spacing": "geometric"},
    "paths": 1000, "seed": 42})"));
  VerifySpec spec;
  spec.points = default_test_points();
  std::vector<std::string> csv;
  std::vector<std::string> reports;
  bool codes_ok = true;
  for (unsigned threads : {1u, 4u, 8u}) {
    c.threads = threads;
    std::ostringstream out, err, rep;
    codes_ok = codes_ok && cmd_simulate(c, true, out, err) == kExitOk &&
               cmd_verify(c, spec, rep, err) == kExitOk;
    csv.push_back(out.str());
    reports.push_back(rep.str());
  }
  const bool same = csv[0] == csv[1] && csv[0] == csv[2] && reports[0] == reports[1] &&
                    reports[0] == reports[2] && codes_ok;
  return {same, fmt("CSV %.0f bytes, JSON %.0f bytes, identical across 1/4/8 threads",
                    static_cast<double>(csv[0].size()), static_cast<double>(reports[0].size()))};
}

}  // namespace

int main() {
  run(1, "oracle dilative identity", criterion_oracle_identity, 1.0);
  run(2, "Gaussian variance of X_1", criterion_gaussian_variance, 30.0);
  run(3, "dilative scaling test", criterion_dilative_check, 60.0);
  run(4, "stable driver scaling and oracle", criterion_stable, 60.0);
  run(5, "background round trip", criterion_round_trip);
  run(6, "Lamperti/OU consistency", criterion_ou);
  run(7, "translative/time-stable/IDT transport", criterion_transport);
  run(8, "admissibility truth table", criterion_truth_table);
  run(9, "cascade diagnostic", criterion_cascade);
  run(10, "determinism across threads", criterion_determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
