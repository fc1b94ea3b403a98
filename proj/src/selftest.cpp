#include "paircat/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "paircat/config.hpp"
#include "paircat/oracle.hpp"
#include "paircat/presets.hpp"
#include "paircat/runner.hpp"
#include "paircat/specfun.hpp"

namespace paircat::selftest {

namespace {

using std::numbers::pi;

std::string fmt(const char* format, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

Outcome parity(bool quick) {
  const int n_max = quick ? 128 : 512;
  double worst = 0.0;
  for (double x : {0.3, 1.7, 4.0, 9.5, 15.0, 20.0}) {
    const auto plus = specfun::oscillator_column(x, n_max);
    const auto minus = specfun::oscillator_column(-x, n_max);
    for (int n = 0; n <= n_max; ++n) {
      const double a = plus.values[n];
      const double b = (n % 2 ? -1.0 : 1.0) * minus.values[n];
      if (!std::isfinite(a) || !std::isfinite(b)) return {false, "non-finite entry"};
      const double scale = std::max(std::abs(a), 1e-300);
      worst = std::max(worst, std::abs(a - b) / scale);
    }
  }
  return {worst <= 1e-12, fmt("max relative parity defect %.3g", worst)};
}

Outcome orthonormality(bool quick) {
  const int n_max = quick ? 12 : 40;
  const double h = 1e-2;
  const int nodes = 2401;
  std::vector<std::vector<double>> table;
  table.reserve(nodes);
  for (int k = 0; k < nodes; ++k) table.push_back(specfun::oscillator_column(-12.0 + h * k, n_max).values);
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (int m = n; m <= n_max; ++m) {
      double sum = 0.0;
      for (int k = 0; k < nodes; ++k) {
        sum += (k == 0 || k == nodes - 1 ? 0.5 : 1.0) * table[k][n] * table[k][m];
      }
      worst = std::max(worst, std::abs(sum * h - (n == m ? 1.0 : 0.0)));
    }
  }
  return {worst <= 1e-6, fmt("max |<n|m> - delta| %.3g", worst)};
}

Outcome bessel_series(bool quick) {
  double worst = 0.0;
  for (double xi : {0.1, 1.0, 3.0, 8.0, 15.0, 25.0}) {
    if (quick && xi > 8.0) break;
    for (int q = 0; q <= 12; ++q) {
      long double sum = 0.0L;
      for (int n = 0; n < 400; ++n) {
        sum += std::exp(static_cast<long double>((2 * n + q) * std::log(xi)) -
                        std::lgamma(n + 1.0L) - std::lgamma(n + q + 1.0L));
      }
      const double series = static_cast<double>(sum);
      const double direct = specfun::bessel_i(q, 2.0 * xi);
      worst = std::max(worst, std::abs(direct - series) / series);
    }
  }
  return {worst <= 1e-12, fmt("max relative mismatch %.3g", worst)};
}

Outcome eigen_residuals(bool quick) {
  double worst_pc = 0.0;
  double worst_cat = 0.0;
  for (double xi : {0.5, 1.0, 2.5, 5.0}) {
    for (int q = 0; q <= 10; q += quick ? 5 : 1) {
      const int n_max = fockspace::choose_truncation(xi, q, kDefaultTailEpsilon);
      const LadderState pc = fockspace::pair_coherent(xi, q, n_max);
      const LadderState a = fockspace::apply_pair_annihilation(pc);
      double r = 0.0;
      for (int n = 0; n <= n_max; ++n) r += std::norm(a.coeffs[n] - xi * pc.coeffs[n]);
      worst_pc = std::max(worst_pc, std::sqrt(r));

      PairCatSpec spec;
      spec.xi = xi;
      spec.q = q;
      spec.phi = pi / 2;
      const LadderState cat = fockspace::pair_cat(spec);
      const LadderState aa = fockspace::apply_pair_annihilation(fockspace::apply_pair_annihilation(cat));
      double rc = 0.0;
      for (int n = 0; n <= cat.n_max(); ++n) rc += std::norm(aa.coeffs[n] - xi * xi * cat.coeffs[n]);
      worst_cat = std::max(worst_cat, std::sqrt(rc));
    }
  }
  return {worst_pc < 1e-8 && worst_cat < 1e-7,
          fmt("ab residual %.3g", worst_pc) + fmt(", a2b2 residual %.3g", worst_cat)};
}

Outcome cat_structure(bool) {
  double worst_norm = 0.0;
  bool parity_ok = true;
  for (double xi : {0.1, 1.0, 3.0, 7.0}) {
    for (int q : {0, 2, 5}) {
      for (double phi : {0.0, pi / 2, pi}) {
        PairCatSpec spec;
        spec.xi = xi;
        spec.q = q;
        spec.phi = phi;
        const LadderState s = fockspace::pair_cat(spec);
        worst_norm = std::max(worst_norm, std::abs(s.norm() - 1.0));
        for (int n = 0; n <= s.n_max(); ++n) {
          if (phi == 0.0 && n % 2 == 1 && s.coeffs[n] != complex(0.0)) parity_ok = false;
          if (phi == pi && n % 2 == 0 && s.coeffs[n] != complex(0.0)) parity_ok = false;
        }
      }
    }
  }
  return {parity_ok && worst_norm <= 1e-12,
          std::string(parity_ok ? "parity exact" : "parity broken") + fmt(", norm defect %.3g", worst_norm)};
}

Outcome cat_closed_form(bool) {
  double worst = 0.0;
  for (double xi : {0.5, 1.0, 3.0, 8.0}) {
    for (int q : {0, 1, 4}) {
      for (double phi : {0.0, pi / 3, pi / 2}) {
        PairCatSpec spec;
        spec.xi = xi;
        spec.q = q;
        spec.phi = phi;
        worst = std::max(worst, fockspace::cat_scale_check(spec).relative_error());
      }
    }
  }
  return {worst <= 1e-10, fmt("max relative mismatch %.3g", worst)};
}

Outcome oracle_equivalence(bool quick) {
  const std::vector<int> qs = quick ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2, 5};
  const std::vector<double> xis = quick ? std::vector<double>{1.0, 5.0} : std::vector<double>{1.0, 5.0, 10.0};
  const std::vector<double> areas = quick ? std::vector<double>{2.0} : std::vector<double>{1.0, 8.0};
  double worst = 0.0;
  double worst_paths = 0.0;
  for (int q : qs) {
    for (double xi : xis) {
      PairCatSpec spec;
      spec.xi = xi;
      spec.q = q;
      spec.phi = pi / 2;
      const JointState psi0 =
          dynamics::make_joint_state(fockspace::pair_cat(spec), InternalState::excited);
      for (const CouplingProfile& profile :
           {CouplingProfile{ConstantCoupling{1.0}}, CouplingProfile{SinhCoupling{1.0, 0.5}}}) {
        for (double area : areas) {
          // invert alpha(t) = area
          double t = area;
          if (const auto* s = std::get_if<SinhCoupling>(&profile)) {
            t = std::acosh(1.0 + area * s->varpi / s->lambda) / s->varpi;
          }
          const auto oracle =
              dynamics::evolve_oracle(psi0, profile, t, dynamics::oracle_steps(profile, t, 20000.0));
          const JointState exact = dynamics::evolve_analytic(psi0, profile, t);
          const Eigen::VectorXcd diff = dynamics::to_dense(exact) - dynamics::to_dense(oracle.integrated);
          worst = std::max(worst, diff.norm());
          worst_paths = std::max(worst_paths, oracle.path_difference);
        }
      }
    }
  }
  return {worst < 1e-8, fmt("max |analytic - oracle| %.3g", worst) + fmt(", oracle paths %.3g", worst_paths)};
}

Outcome preset_series(bool quick, bool check_ranks) {
  double worst_bound = 0.0;
  double worst_equality = 0.0;
  bool ranks_ok = true;
  std::size_t examined = 0;
  for (const auto& preset : presets()) {
    ExperimentConfig cfg = load_config(preset.text);
    if (!cfg.wants_series() || cfg.sweep) continue;
    if (quick && !check_ranks && preset.name != "fig4-text") continue;
    if (check_ranks && preset.name != "fig5a") continue;
    const auto out = runner::run(cfg, 1);
    const TimeSeries& s = *out.series;
    ++examined;
    for (std::size_t i = 0; i < s.size(); ++i) {
      worst_bound = std::max({worst_bound, -s.s_vn_atom[i], s.s_vn_atom[i] - std::log(2.0)});
      worst_equality = std::max(worst_equality, std::abs(s.s_vn_atom[i] - s.s_vn_field[i]));
    }
    if (check_ranks) {
      std::vector<double> p_min(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) p_min[i] = 0.5 * (1.0 - std::abs(s.inversion[i]));
      ranks_ok = rank_agreement(p_min, s.s_vn_atom, s.s_lin_2).violations == 0;
    }
  }
  if (check_ranks) return {ranks_ok && examined == 1, ranks_ok ? "orderings agree" : "orderings differ"};
  return {worst_bound <= 1e-12 && worst_equality < 1e-10,
          std::to_string(examined) + " presets" + fmt(", bound excess %.3g", std::max(worst_bound, 0.0)) +
              fmt(", |S_atom - S_field| %.3g", worst_equality)};
}

Outcome quadrature_symmetry(bool quick) {
  double worst = 0.0;
  double worst_norm = 0.0;
  for (const auto& preset : presets()) {
    ExperimentConfig cfg = load_config(preset.text);
    if (!cfg.wants_raster() || cfg.sweep) continue;
    if (quick) cfg.grid->nx = cfg.grid->ny = 161;
    const auto out = runner::run(cfg, 1);
    const auto a = quadrature::measure_asymmetry(*out.raster);
    worst_norm = std::max(worst_norm, std::abs(out.raster->norm_estimate - 1.0));
    worst = std::max(worst, a.point);
    if (cfg.state.q == 0) worst = std::max(worst, a.swap);
    if (std::cos(cfg.state.phi) == 1.0) worst = std::max({worst, a.x_parity, a.y_parity});
  }
  return {worst < 1e-12 && worst_norm < 1e-3,
          fmt("max asymmetry %.3g", worst) + fmt(", max |norm - 1| %.3g", worst_norm)};
}

}  // namespace

RankAgreement rank_agreement(const std::vector<double>& eigenvalue, const std::vector<double>& first,
                             const std::vector<double>& second, double eigen_tie, double resolution) {
  auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
  RankAgreement r;
  for (std::size_t i = 0; i < eigenvalue.size(); ++i) {
    for (std::size_t j = i + 1; j < eigenvalue.size(); ++j) {
      if (std::abs(eigenvalue[i] - eigenvalue[j]) < eigen_tie) continue;
      const double a = first[i] - first[j];
      const double b = second[i] - second[j];
      if (std::abs(a) <= resolution || std::abs(b) <= resolution) {
        ++r.unresolved;
        continue;
      }
      ++r.compared;
      if (sign(a) != sign(b)) ++r.violations;
    }
  }
  return r;
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all{
      {"specfun.parity", "phi_n(-x) = (-1)^n phi_n(x), finite up to n = 512, |x| <= 20", parity},
      {"specfun.orthonormality", "trapezoid overlaps of phi_n on [-12, 12] equal delta_nm", orthonormality},
      {"specfun.bessel_series", "I_q(2|xi|) matches the pair-coherent normalization series", bessel_series},
      {"fockspace.eigen_residuals", "ab|xi,q> = xi|xi,q> and a^2b^2|cat> = xi^2|cat>", eigen_residuals},
      {"fockspace.cat_structure", "unit norm and exact parity selection of cat states", cat_structure},
      {"fockspace.cat_closed_form", "cat amplitude scale equals N_phi N_q for |xi| <= 8", cat_closed_form},
      {"dynamics.oracle_equivalence", "block propagator matches the brute-force oracle", oracle_equivalence},
      {"observables.entropy_bounds", "0 <= S <= ln 2 and S_atom = S_field on preset runs",
       [](bool quick) { return preset_series(quick, false); }},
      {"observables.measure_agreement", "S_vn and S_L(2) order fig5a samples identically",
       [](bool quick) { return preset_series(quick, true); }},
      {"quadrature.symmetry", "figure presets: reflection symmetries and unit norm", quadrature_symmetry},
  };
  return all;
}

}  // namespace paircat::selftest
