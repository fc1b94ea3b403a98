#include "paircat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "paircat/errors.hpp"

namespace paircat {

std::pair<double, double> QubitDensity::eigenvalues() const {
  const double a = rho(0, 0).real();
  const double d = rho(1, 1).real();
  const double off = std::abs(rho(0, 1));
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), off);
  auto clamp = [](double v) { return std::clamp(v, 0.0, 1.0); };
  return {clamp(mean + radius), clamp(mean - radius)};
}

bool QubitDensity::is_valid() const {
  if (std::abs(rho(0, 1) - std::conj(rho(1, 0))) > 1e-13) return false;
  if (std::abs(rho(0, 0).imag()) > 1e-13 || std::abs(rho(1, 1).imag()) > 1e-13) return false;
  if (std::abs(rho.trace() - std::complex<double>(1.0)) > 1e-12) return false;
  const double a = rho(0, 0).real();
  const double d = rho(1, 1).real();
  const double radius = std::hypot(0.5 * (a - d), std::abs(rho(0, 1)));
  const double lo = 0.5 * (a + d) - radius;
  const double hi = 0.5 * (a + d) + radius;
  return lo >= -1e-12 && hi <= 1.0 + 1e-12;
}

void TimeSeries::resize(std::size_t n) {
  for (auto* column : {&times, &alpha, &inversion, &s_vn_atom, &s_vn_field, &s_lin_2, &s_lin_3,
                       &norm_error}) {
    column->assign(n, 0.0);
  }
}

namespace observables {

namespace {

double log_in(double v, LogBase base) {
  return base == LogBase::natural ? std::log(v) : std::log2(v);
}

}  // namespace

double atomic_inversion(const JointState& state, InversionSign sign) {
  double pe = 0.0;
  double pg = std::norm(state.g_floor);
  for (const auto& a : state.e_amp) pe += std::norm(a);
  for (const auto& a : state.g_amp) pg += std::norm(a);
  // Dividing out the norm keeps W = +-1 exact for a state confined to one level.
  const double total = pe + pg;
  return sign == InversionSign::excited_minus_ground ? (pe - pg) / total : (pg - pe) / total;
}

QubitDensity reduced_atom(const JointState& state) {
  std::map<std::pair<int, int>, complex> ground;
  QubitDensity out;
  double pe = 0.0;
  double pg = 0.0;
  const auto comps = dynamics::components(state);
  for (const auto& c : comps) {
    if (c.excited) {
      pe += std::norm(c.amplitude);
    } else {
      pg += std::norm(c.amplitude);
      ground[{c.n1, c.n2}] += c.amplitude;
    }
  }
  complex coherence = 0.0;
  for (const auto& c : comps) {
    if (!c.excited) continue;
    const auto it = ground.find({c.n1, c.n2});
    if (it != ground.end()) coherence += c.amplitude * std::conj(it->second);
  }
  out.rho(0, 0) = pe;
  out.rho(1, 1) = pg;
  out.rho(0, 1) = coherence;
  out.rho(1, 0) = std::conj(coherence);
  return out;
}

double entropy_of_spectrum(const std::vector<double>& spectrum, LogBase base) {
  double s = 0.0;
  for (double p : spectrum) {
    const double v = std::clamp(p, 0.0, 1.0);
    if (v > 0.0) s -= v * log_in(v, base);
  }
  return s;
}

double von_neumann_entropy(const QubitDensity& rho, LogBase base) {
  const auto [hi, lo] = rho.eigenvalues();
  return entropy_of_spectrum({hi, lo}, base);
}

double linear_entropy(const QubitDensity& rho, int order) {
  if (order < 2) {
    throw ValidationError("linear_entropy: order must be >= 2, got " + std::to_string(order));
  }
  const auto [hi, lo] = rho.eigenvalues();
  return 1.0 - (std::pow(hi, order) + std::pow(lo, order));
}

std::vector<double> field_spectrum(const JointState& state) {
  // sector (n2 - n1) -> Fock label -> (excited amplitude, ground amplitude)
  std::map<int, std::map<std::pair<int, int>, std::pair<complex, complex>>> sectors;
  for (const auto& c : dynamics::components(state)) {
    if (c.amplitude == complex(0.0)) continue;
    auto& slot = sectors[c.n2 - c.n1][{c.n1, c.n2}];
    (c.excited ? slot.first : slot.second) += c.amplitude;
  }
  std::vector<double> spectrum;
  for (const auto& [charge, labels] : sectors) {
    double ee = 0.0;
    double gg = 0.0;
    complex eg = 0.0;
    for (const auto& [label, amps] : labels) {
      ee += std::norm(amps.first);
      gg += std::norm(amps.second);
      eg += std::conj(amps.first) * amps.second;
    }
    const double mean = 0.5 * (ee + gg);
    const double radius = std::hypot(0.5 * (ee - gg), std::abs(eg));
    for (double v : {mean + radius, mean - radius}) {
      if (v > kEigenClamp) spectrum.push_back(std::min(v, 1.0));
    }
  }
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  return spectrum;
}

double field_entropy(const JointState& state) {
  return von_neumann_entropy(reduced_atom(state), LogBase::natural);
}

EntropyAgreement field_entropy_check(const JointState& state) {
  const QubitDensity rho = reduced_atom(state);
  const auto [hi, lo] = rho.eigenvalues();
  std::vector<double> atom{hi, lo};
  std::vector<double> field = field_spectrum(state);
  field.resize(std::max<std::size_t>(field.size(), 2), 0.0);
  EntropyAgreement out;
  out.atom = entropy_of_spectrum(atom);
  out.field = entropy_of_spectrum(field);
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double a = k < atom.size() ? atom[k] : 0.0;
    out.spectral_difference = std::max(out.spectral_difference, std::abs(a - field[k]));
  }
  return out;
}

}  // namespace observables
}  // namespace paircat
