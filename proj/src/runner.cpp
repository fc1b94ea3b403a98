#include "paircat/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "paircat/parallel.hpp"

namespace paircat::runner {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmtg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Re-throws the active exception with `context` prepended, keeping its family.
[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const TruncationError& e) {
    throw TruncationError(context + ": " + e.what());
  } catch (const GridTooSmallError& e) {
    throw GridTooSmallError(context + ": " + e.what());
  } catch (const NormDriftError& e) {
    throw NormDriftError(context + ": " + e.what());
  } catch (const DegenerateStateError& e) {
    throw DegenerateStateError(context + ": " + e.what());
  } catch (const OverflowError& e) {
    throw OverflowError(context + ": " + e.what());
  } catch (const NumericalGuardError& e) {
    throw NumericalGuardError(context + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(context + ": " + e.what());
  }
}

TimeSeries evolve_series(const ExperimentConfig& cfg, const LadderState& vib, int threads) {
  const JointState initial = dynamics::make_joint_state(vib, cfg.initial_internal);
  const double unit = time_unit(cfg.profile);
  const auto samples = static_cast<std::size_t>(cfg.time.samples);

  TimeSeries series;
  series.resize(samples);
  parallel_for(samples, threads, [&](std::size_t i) {
    const double scaled = cfg.time.t_max * static_cast<double>(i) /
                          static_cast<double>(samples - 1);
    const double alpha = dynamics::pulse_area(cfg.profile, scaled / unit);
    const JointState psi = dynamics::evolve_by_area(initial, alpha);
    const QubitDensity rho = observables::reduced_atom(psi);
    series.times[i] = scaled;
    series.alpha[i] = alpha;
    series.inversion[i] = observables::atomic_inversion(psi, cfg.sign);
    series.s_vn_atom[i] = observables::von_neumann_entropy(rho, cfg.log_base);
    series.s_vn_field[i] =
        observables::entropy_of_spectrum(observables::field_spectrum(psi), cfg.log_base);
    series.s_lin_2[i] = observables::linear_entropy(rho, 2);
    series.s_lin_3[i] = observables::linear_entropy(rho, 3);
    series.norm_error[i] = std::abs(psi.norm() - 1.0);
  });
  return series;
}

std::string point_label(const ExperimentConfig& cfg) {
  std::string label = "xi=" + fmtg(cfg.state.xi.real());
  if (cfg.state.xi.imag() != 0.0) label += (cfg.state.xi.imag() > 0 ? "+" : "") + fmtg(cfg.state.xi.imag()) + "i";
  label += " q=" + std::to_string(cfg.q_requested) + " phi=" + fmtg(cfg.state.phi);
  if (const auto* s = std::get_if<SinhCoupling>(&cfg.profile)) label += " varpi=" + fmtg(s->varpi);
  return label;
}

}  // namespace

double time_unit(const CouplingProfile& profile) {
  if (const auto* c = std::get_if<ConstantCoupling>(&profile)) return c->lambda;
  if (const auto* s = std::get_if<SinhCoupling>(&profile)) return s->lambda;
  return 1.0;
}

std::string state_label(const ExperimentConfig& config) { return point_label(config); }

RunOutput run(const ExperimentConfig& config, int threads) {
  if (config.sweep) throw ValidationError("run: config carries a sweep; use sweep()");
  const auto start = std::chrono::steady_clock::now();
  RunOutput out;
  out.config = config;
  try {
    config.state.validate();
    dynamics::validate(config.profile);
    const Truncation cut = fockspace::certify_cat_truncation(config.state);
    const LadderState vib = fockspace::pair_cat(config.state);
    out.manifest.n_max = cut.n_max;
    out.manifest.tail_bound = cut.tail_bound;
    if (config.wants_series()) out.series = evolve_series(config, vib, threads);
    if (config.wants_raster()) {
      out.raster = quadrature::quadrature_distribution(vib, config.grid.value_or(GridSpec{}), threads);
    }
  } catch (const std::runtime_error&) {
    rethrow_with_context(point_label(config));
  }

  auto& notes = out.manifest.notes;
  if (config.modes_relabeled()) {
    notes.push_back("q = " + std::to_string(config.q_requested) +
                    " reduced to q = " + std::to_string(config.state.q) +
                    " by swapping the two vibrational mode labels");
  }
  if (config.physics.eta) {
    notes.push_back("eta = " + fmtg(*config.physics.eta) +
                    " only rescales lambda; it is absorbed by the scaled time axis and has no "
                    "effect on the outputs");
  }
  if (config.physics.omega_0 || config.physics.omega_1 || config.physics.omega_2) {
    notes.push_back("trap and transition frequencies are metadata; their free-evolution phases "
                    "cancel in every reported observable");
  }
  out.manifest.config_text = to_config_text(config);
  out.manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<SweepPoint> sweep(const ExperimentConfig& config, int threads) {
  std::vector<SweepPoint> points;
  if (!config.sweep) {
    SweepPoint p;
    p.output = run(config, threads);
    points.push_back(std::move(p));
    return points;
  }
  for (double value : config.sweep->values) {
    SweepPoint p;
    p.value = value;
    try {
      p.output = run(apply_sweep_value(config, config.sweep->parameter, value), threads);
    } catch (const ValidationError& e) {
      p.error = e.what();
      p.error_code = 1;
    } catch (const NumericalGuardError& e) {
      p.error = e.what();
      p.error_code = 2;
    }
    points.push_back(std::move(p));
  }
  return points;
}

void write_series_csv(std::ostream& out, const TimeSeries& s) {
  out << "lambda_t,alpha,inversion,s_vn_atom,s_vn_field,s_lin_2,s_lin_3,norm_error\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << fmt17(s.times[i]) << ',' << fmt17(s.alpha[i]) << ',' << fmt17(s.inversion[i]) << ','
        << fmt17(s.s_vn_atom[i]) << ',' << fmt17(s.s_vn_field[i]) << ',' << fmt17(s.s_lin_2[i])
        << ',' << fmt17(s.s_lin_3[i]) << ',' << fmt17(s.norm_error[i]) << '\n';
  }
}

nlohmann::ordered_json manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["config"] = m.config_text;
  j["n_max"] = m.n_max;
  j["certified_tail_mass"] = m.tail_bound;
  j["wall_seconds"] = m.wall_seconds;
  j["notes"] = m.notes;
  return j;
}

nlohmann::ordered_json series_json(const TimeSeries& s, const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["manifest"] = manifest_json(manifest);
  nlohmann::ordered_json cols;
  cols["lambda_t"] = s.times;
  cols["alpha"] = s.alpha;
  cols["inversion"] = s.inversion;
  cols["s_vn_atom"] = s.s_vn_atom;
  cols["s_vn_field"] = s.s_vn_field;
  cols["s_lin_2"] = s.s_lin_2;
  cols["s_lin_3"] = s.s_lin_3;
  cols["norm_error"] = s.norm_error;
  j["series"] = std::move(cols);
  return j;
}

ExperimentConfig config_from_manifest(const nlohmann::json& manifest) {
  const nlohmann::json& m = manifest.contains("manifest") ? manifest.at("manifest") : manifest;
  if (!m.contains("config") || !m.at("config").is_string()) {
    throw ValidationError("manifest: missing 'config' text");
  }
  return load_config(m.at("config").get<std::string>());
}

}  // namespace paircat::runner
