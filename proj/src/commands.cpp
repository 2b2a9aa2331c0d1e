#include "dilastab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dilastab/error.hpp"

namespace dilastab {

using nlohmann::json;

namespace {

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json law_json(const ScalingLaw& law) {
  json j{{"kind", to_string(law.kind)}};
  switch (law.kind) {
    case LawKind::Dilative:
      j["alpha"] = law.alpha;
      j["delta"] = law.delta;
      j["T"] = law.shift;
      break;
    case LawKind::Translative:
      j["delta"] = law.delta;
      j["T"] = law.shift;
      break;
    case LawKind::TimeStable:
      j["delta"] = law.delta;
      j["n"] = law.n;
      break;
    case LawKind::Idt:
      j["n"] = law.n;
      break;
  }
  return j;
}

// Time in the domain before `step` that maps to `t` after it.
double pull_back(TransformStep step, double t, double delta) {
  switch (step) {
    case TransformStep::Lamperti: return std::exp(t);
    case TransformStep::LampertiInverse:
    case TransformStep::TimeStable: return std::log(t);
    case TransformStep::Idt: return std::log(t) / delta;
  }
  return t;
}

// Runs `body`, mapping library errors to exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InadmissibleParamsError& e) {
    err << "inadmissible: " << e.verdict().reason << "\n";
    return kExitInadmissible;
  } catch (const LowMagnitudeError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::OracleOutOfDomain ? kExitInadmissible : kExitIo;
  }
}

int finish(std::ostream& out, std::ostream& err, const std::string& text) {
  out << text;
  out.flush();
  if (!out) {
    err << "error: failed to write output\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace

std::vector<TestPoint> default_test_points() {
  std::vector<TestPoint> points;
  for (double t : {0.5, 1.0}) {
    for (double theta : {0.25, 0.5, 1.0}) points.push_back(TestPoint::single(t, theta));
  }
  points.push_back(TestPoint::increments(0.5, 1.0, 0.5, 0.25));
  return points;
}

ScalingLaw make_law(const VerifySpec& spec, const DilationParams& simulated) {
  const double alpha = spec.law_alpha.value_or(simulated.alpha);
  const double delta = spec.law_delta.value_or(simulated.delta);
  switch (spec.law) {
    case LawKind::Dilative: return ScalingLaw::dilative(alpha, delta, spec.T);
    case LawKind::Translative: return ScalingLaw::translative(delta, spec.T);
    case LawKind::TimeStable: return ScalingLaw::time_stable(delta, spec.n);
    case LawKind::Idt: return ScalingLaw::idt(spec.n);
  }
  return ScalingLaw::dilative(alpha, delta, spec.T);
}

std::vector<double> required_simulation_times(const VerifySpec& spec, const ScalingLaw& law,
                                              const std::vector<TransformStep>& chain,
                                              double delta) {
  std::vector<double> times;
  for (const TestPoint& p : spec.points) {
    times.insert(times.end(), p.times.begin(), p.times.end());
    const auto scaled = law.lhs_times(p.times);
    times.insert(times.end(), scaled.begin(), scaled.end());
  }
  for (double& t : times) {
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) t = pull_back(*it, t, delta);
    if (!(t > 0.0) || !std::isfinite(t)) {
      std::ostringstream os;
      os << "test point needs simulation time " << t << ", which is not positive";
      throw Error(ErrorCode::NonPositiveTime, os.str());
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) {
                            return std::abs(a - b) <=
                                   TimeGrid::kMatchTolerance * std::max(1.0, std::abs(b));
                          }),
              times.end());
  if (times.empty()) throw Error(ErrorCode::InvalidArgument, "no test points");
  return times;
}

json report_to_json(const ScalingReport& report) {
  json rows = json::array();
  for (const ScalingRow& row : report.rows) {
    json r{{"times", row.point.times},
           {"thetas", row.point.thetas},
           {"lhs", complex_json(row.lhs)},
           {"rhs", complex_json(row.rhs)},
           {"z", json::array({row.z_re, row.z_im})},
           {"pass", row.pass}};
    if (row.oracle) {
      r["oracle"] = complex_json(*row.oracle);
      r["oracle_z"] = json::array({row.oracle_z_re, row.oracle_z_im});
    }
    rows.push_back(std::move(r));
  }
  return {{"law", law_json(report.law)}, {"rows", rows}, {"pass_fraction", report.pass_fraction}};
}

void write_paths_csv(const PathEnsemble& ensemble, bool include_origin, std::ostream& out) {
  const bool skip_origin = ensemble.role() == PathRole::X && !include_origin;
  out << "path_id,t,value\n";
  for (std::size_t n = 0; n < ensemble.size(); ++n) {
    for (std::size_t i = 0; i < ensemble.grid().size(); ++i) {
      const double t = ensemble.grid()[i];
      if (skip_origin && t == 0.0) continue;
      out << n << ',' << format_double(t) << ',' << format_double(ensemble.value(n, i)) << '\n';
    }
  }
}

int cmd_simulate(const RunConfig& config, bool include_origin, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const EnsembleConfig ens_config{config.driver, config.params, grid_times(config.grid),
                                    config.disc, config.transforms};
    const PathEnsemble ens =
        simulate_ensemble(ens_config, config.paths, config.seed, config.threads);
    std::ostringstream csv;
    write_paths_csv(ens, include_origin, csv);
    return finish(out, err, csv.str());
  });
}

int cmd_verify(const RunConfig& config, const VerifySpec& spec, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    validate(config);
    const ScalingLaw law = make_law(spec, config.params);
    const EnsembleConfig ens_config{
        config.driver, config.params,
        required_simulation_times(spec, law, config.transforms, config.params.delta),
        config.disc, config.transforms};
    const PathEnsemble ens =
        simulate_ensemble(ens_config, config.paths, config.seed, config.threads);
    const ScalingReport report = check_scaling(ens, law, spec.points, spec.check);
    const int written = finish(out, err, report_to_json(report).dump(2) + "\n");
    if (written != kExitOk) return written;
    if (report.pass_fraction < spec.threshold) {
      err << "verification failed: pass_fraction " << report.pass_fraction << " < "
          << spec.threshold << "\n";
      return static_cast<int>(kExitVerifyFailed);
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_oracle(const LevyDriverSpec& driver, const DilationParams& params,
               std::span<const double> times, std::span<const double> thetas,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ostringstream csv;
    csv << "t,theta,re,im\n";
    for (double t : times) {
      for (double theta : thetas) {
        const std::complex<double> psi = oracle_log_cf(driver, params, t, theta);
        csv << format_double(t) << ',' << format_double(theta) << ','
            << format_double(psi.real()) << ',' << format_double(psi.imag()) << '\n';
      }
    }
    return finish(out, err, csv.str());
  });
}

}  // namespace dilastab
