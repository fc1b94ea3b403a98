// Acceptance suite: one PASS/FAIL line per criterion.
// usage: paircat_acceptance <paircat cli> <plateau fixture json> <scratch dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "paircat/config.hpp"
#include "paircat/dynamics.hpp"
#include "paircat/fockspace.hpp"
#include "paircat/observables.hpp"
#include "paircat/oracle.hpp"
#include "paircat/presets.hpp"
#include "paircat/quadrature.hpp"
#include "paircat/runner.hpp"
#include "paircat/selftest.hpp"

using namespace paircat;

namespace {

constexpr double pi = std::numbers::pi;

struct Result {
  bool passed;
  std::string detail;
};

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Time at which the pulse area reaches `area`.
double time_for_area(const CouplingProfile& profile, double area) {
  if (const auto* s = std::get_if<SinhCoupling>(&profile)) {
    return std::acosh(1.0 + area * s->varpi / s->lambda) / s->varpi;
  }
  return area / std::get<ConstantCoupling>(profile).lambda;
}

Result oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  double worst_paths = 0.0;
  int largest_n = 0;
  int cases = 0;
  for (int q : {0, 1, 2, 5}) {
    for (double xi : {1.0, 5.0, 10.0}) {
      for (double phi : {0.0, pi / 2}) {
        PairCatSpec spec;
        spec.xi = xi;
        spec.q = q;
        spec.phi = phi;
        const LadderState cat = fockspace::pair_cat(spec);
        largest_n = std::max(largest_n, cat.n_max());
        const JointState psi0 = dynamics::make_joint_state(cat, InternalState::excited);
        for (const CouplingProfile& profile :
             {CouplingProfile{ConstantCoupling{1.0}}, CouplingProfile{SinhCoupling{1.0, 0.5}}}) {
          for (double area : {0.7, 30.0}) {
            const double t = time_for_area(profile, area);
            // evolve_oracle throws unless its two paths agree to 1e-9
            const auto oracle =
                dynamics::evolve_oracle(psi0, profile, t, dynamics::oracle_steps(profile, t, 12000.0));
            const JointState exact = dynamics::evolve_analytic(psi0, profile, t);
            worst = std::max(worst, (dynamics::to_dense(exact) - dynamics::to_dense(oracle.exponential)).norm());
            worst = std::max(worst, (dynamics::to_dense(exact) - dynamics::to_dense(oracle.integrated)).norm());
            worst_paths = std::max(worst_paths, oracle.path_difference);
            ++cases;
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst < 1e-8 && worst_paths < 1e-9 && elapsed < 60.0 && largest_n <= 40,
          std::to_string(cases) + " cases, max |analytic - oracle| " + fmt("%.2e", worst) +
              ", paths " + fmt("%.2e", worst_paths) + ", N_max <= " + std::to_string(largest_n) +
              ", " + fmt("%.1f s", elapsed)};
}

Result eigen_residuals() {
  double worst_pc = 0.0;
  double worst_cat = 0.0;
  for (double xi : {0.1, 0.5, 1.0, 2.5, 5.0}) {
    for (int q = 0; q <= 10; ++q) {
      const int n_max = fockspace::choose_truncation(xi, q, kDefaultTailEpsilon);
      const LadderState pc = fockspace::pair_coherent(xi, q, n_max);
      const LadderState a = fockspace::apply_pair_annihilation(pc);
      double r = 0.0;
      for (int n = 0; n <= n_max; ++n) r += std::norm(a.coeffs[n] - xi * pc.coeffs[n]);
      worst_pc = std::max(worst_pc, std::sqrt(r));
      for (double phi : {0.0, pi / 2, pi}) {
        PairCatSpec spec;
        spec.xi = xi;
        spec.q = q;
        spec.phi = phi;
        const LadderState cat = fockspace::pair_cat(spec);
        const LadderState aa = fockspace::apply_pair_annihilation(fockspace::apply_pair_annihilation(cat));
        double rc = 0.0;
        for (int n = 0; n <= cat.n_max(); ++n) rc += std::norm(aa.coeffs[n] - xi * xi * cat.coeffs[n]);
        worst_cat = std::max(worst_cat, std::sqrt(rc));
      }
    }
  }
  return {worst_pc < 1e-8 && worst_cat < 1e-7,
          "ab residual " + fmt("%.2e", worst_pc) + ", a2b2 residual " + fmt("%.2e", worst_cat)};
}

Result inversion_anchor() {
  const auto start = std::chrono::steady_clock::now();
  const auto out = runner::run(load_config(find_preset("fig4-text")->text), 1);
  const TimeSeries& s = *out.series;
  double minimum = NAN;
  double at = NAN;
  for (std::size_t i = 1; i + 1 < s.size() && s.times[i] <= 1.5; ++i) {
    if (s.inversion[i] < s.inversion[i - 1] && s.inversion[i] <= s.inversion[i + 1]) {
      minimum = s.inversion[i];
      at = s.times[i];
      break;
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = s.inversion[0] == 1.0 && minimum >= -0.90 && minimum <= -0.60 && elapsed < 5.0;
  return {ok, "W(0) = " + fmt("%.17g", s.inversion[0]) + ", first minimum " + fmt("%.5f", minimum) +
                  " at lambda t = " + fmt("%.3f", at) + ", " + fmt("%.2f s", elapsed)};
}

Result entropy_bounds() {
  double excess = 0.0;
  double mismatch = 0.0;
  std::size_t samples = 0;
  for (const auto& preset : presets()) {
    const ExperimentConfig cfg = load_config(preset.text);
    if (!cfg.wants_series()) continue;
    for (const auto& point : runner::sweep(cfg, 1)) {
      if (!point.output) return {false, std::string(preset.name) + ": " + point.error};
      const TimeSeries& s = *point.output->series;
      for (std::size_t i = 0; i < s.size(); ++i) {
        excess = std::max({excess, -s.s_vn_atom[i], s.s_vn_atom[i] - std::log(2.0)});
        mismatch = std::max(mismatch, std::abs(s.s_vn_atom[i] - s.s_vn_field[i]));
      }
      samples += s.size();
    }
  }
  return {excess <= 1e-12 && mismatch < 1e-10,
          std::to_string(samples) + " samples, bound excess " + fmt("%.2e", std::max(excess, 0.0)) +
              ", max |S_atom - S_field| " + fmt("%.2e", mismatch)};
}

Result maximal_entanglement() {
  LadderState vac;
  vac.q = 1;
  vac.coeffs = {1.0};  // |0, 1>
  const JointState psi0 = dynamics::make_joint_state(vac, InternalState::excited);
  const JointState psi = dynamics::evolve_analytic(psi0, ConstantCoupling{1.0}, pi / 4);
  const QubitDensity rho = observables::reduced_atom(psi);
  const double s = observables::von_neumann_entropy(rho);
  const double sl = observables::linear_entropy(rho, 2);
  const double s_field = observables::field_entropy(psi);
  return {std::abs(s - std::log(2.0)) < 1e-10 && std::abs(sl - 0.5) < 1e-12 &&
              std::abs(s_field - std::log(2.0)) < 1e-10,
          "S - ln 2 = " + fmt("%.2e", s - std::log(2.0)) + ", S_L(2) - 1/2 = " + fmt("%.2e", sl - 0.5)};
}

Result measure_agreement() {
  const auto out = runner::run(load_config(find_preset("fig5a")->text), 1);
  const TimeSeries& s = *out.series;
  std::vector<double> p_min(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    // rho_eg vanishes identically, so the smaller eigenvalue is the smaller population
    p_min[i] = 0.5 * (1.0 - std::abs(s.inversion[i]));
  }
  const auto r = selftest::rank_agreement(p_min, s.s_vn_atom, s.s_lin_2);
  return {r.violations == 0 && r.compared > 0,
          std::to_string(r.compared) + " pairs compared, " + std::to_string(r.violations) +
              " discordant, " + std::to_string(r.unresolved) + " below double resolution"};
}

Result plateau(const std::string& fixture_path) {
  std::ifstream in(fixture_path);
  if (!in) return {false, "cannot read " + fixture_path};
  const auto fixture = nlohmann::json::parse(in);
  const auto out = runner::run(load_config(find_preset(fixture.at("preset").get<std::string>())->text), 1);
  const TimeSeries& s = *out.series;

  auto window = [&](const nlohmann::json& bounds, std::vector<double>& values) {
    values.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.times[i] >= bounds[0].get<double>() && s.times[i] <= bounds[1].get<double>()) {
        values.push_back(s.s_vn_atom[i]);
      }
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  };
  std::vector<double> plateau_values;
  std::vector<double> early_values;
  const double mean = window(fixture.at("window"), plateau_values);
  const double early = window(fixture.at("early_window"), early_values);
  double deviation = 0.0;
  for (double v : plateau_values) deviation = std::max(deviation, std::abs(v - mean));

  const double tol = fixture.at("tolerance").get<double>();
  const double d_mean = std::abs(mean - fixture.at("window_mean").get<double>());
  const double d_dev = std::abs(deviation - fixture.at("window_max_deviation").get<double>());
  const bool counts = plateau_values.size() == fixture.at("window_samples").get<std::size_t>() &&
                      early_values.size() == fixture.at("early_samples").get<std::size_t>();
  return {counts && d_mean < tol && d_dev < tol && mean > early,
          "plateau mean " + fmt("%.6f", mean) + " (fixture diff " + fmt("%.1e", d_mean) +
              "), max deviation diff " + fmt("%.1e", d_dev) + ", early mean " + fmt("%.6f", early)};
}

Result quadrature_symmetry() {
  const auto start = std::chrono::steady_clock::now();
  double worst_norm = 0.0;
  double worst = 0.0;
  int rasters = 0;
  for (const auto& preset : presets()) {
    const ExperimentConfig cfg = load_config(preset.text);
    if (!cfg.wants_raster() || cfg.sweep) continue;
    const auto out = runner::run(cfg, 1);
    const auto a = quadrature::measure_asymmetry(*out.raster);
    worst_norm = std::max(worst_norm, std::abs(out.raster->norm_estimate - 1.0));
    if (cfg.state.q == 0) worst = std::max(worst, a.swap);
    if (std::cos(cfg.state.phi) == 1.0) worst = std::max({worst, a.x_parity, a.y_parity});
    if (std::sin(cfg.state.phi) == 1.0) worst = std::max(worst, a.point);
    ++rasters;
  }
  const double elapsed = seconds_since(start);
  return {rasters == 9 && worst_norm < 1e-3 && worst < 1e-12 && elapsed < 30.0,
          std::to_string(rasters) + " presets, max |norm - 1| " + fmt("%.2e", worst_norm) +
              ", max asymmetry " + fmt("%.2e", worst) + ", " + fmt("%.1f s", elapsed)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Result determinism(const std::string& cli, const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  std::vector<std::string> files;
  for (int threads : {1, 4}) {
    const auto path = scratch / ("fig5a.threads-" + std::to_string(threads) + ".csv");
    std::filesystem::remove(path);
    const std::string command = "\"" + cli + "\" evolve --preset fig5a --threads " + std::to_string(threads) +
                                " --out \"" + path.string() + "\" 2>/dev/null";
    if (std::system(command.c_str()) != 0) return {false, "CLI failed: " + command};
    files.push_back(slurp(path));
  }
  return {!files[0].empty() && files[0] == files[1],
          std::to_string(files[0].size()) + " bytes, --threads 1 vs 4 " +
              (files[0] == files[1] ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: %s <paircat cli> <plateau fixture> <scratch dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::string fixture = argv[2];
  const std::filesystem::path scratch = argv[3];

  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"1 oracle equivalence", oracle_equivalence},
      {"2 eigenstate residuals", eigen_residuals},
      {"3 inversion anchor", inversion_anchor},
      {"4 entropy bounds and purity", entropy_bounds},
      {"5 maximal entanglement", maximal_entanglement},
      {"6 measure agreement", measure_agreement},
      {"7 long-lived plateau", [&] { return plateau(fixture); }},
      {"8 quadrature symmetry and norm", quadrature_symmetry},
      {"9 thread determinism", [&] { return determinism(cli, scratch); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Result r{false, ""};
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    failed += !r.passed;
    std::printf("%s  %-32s %s\n", r.passed ? "PASS" : "FAIL", name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
