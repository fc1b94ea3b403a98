#include "paircat/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paircat/errors.hpp"
#include "paircat/specfun.hpp"

namespace paircat {

namespace {

using specfun::log_factorial;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kDegenerateNorm = 1e-30;

// log of |xi|^(2n) / (n! (n+q)!)
double log_pc_weight(double abs_xi, int q, int n) {
  if (abs_xi == 0.0) return n == 0 ? -log_factorial(q) : kNegInf;
  return 2.0 * n * std::log(abs_xi) - log_factorial(n) - log_factorial(n + q);
}

// e^{i phi} with round-off residue snapped to zero, so that the cat factor
// 1 + (-1)^n e^{i phi} vanishes exactly at phi = 0 and phi = pi.
complex unit_phase(double phi) {
  double c = std::cos(phi);
  double s = std::sin(phi);
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  return {c, s};
}

complex cat_factor(double phi, int n) {
  const complex phase = unit_phase(phi);
  return n % 2 == 0 ? complex(1.0) + phase : complex(1.0) - phase;
}

// Running log-sum-exp accumulator.
class LogSum {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term > max_) {
      scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      scaled_ += std::exp(log_term - max_);
    }
  }
  double log_value() const { return scaled_ > 0.0 ? max_ + std::log(scaled_) : kNegInf; }

 private:
  double max_ = kNegInf;
  double scaled_ = 0.0;
};

// Shared truncation search. `log_weight(n)` gives the (possibly cat-modified)
// log weight; `log_dominance` bounds log(weight / pair-coherent weight).
template <typename LogWeight>
Truncation certify(double abs_xi, int q, double tail_epsilon, int cap,
                   LogWeight log_weight, double log_dominance) {
  if (q < 0) throw ValidationError("truncation: q must be non-negative");
  if (!(tail_epsilon > 0.0)) throw ValidationError("truncation: tail_epsilon must be positive");
  if (abs_xi == 0.0) return {kTruncationFloor, 0.0};

  const double xi_sq = abs_xi * abs_xi;
  const double log_eps = std::log(tail_epsilon);
  LogSum partial;
  for (int n = 0; n <= cap; ++n) {
    partial.add(log_weight(n));
    // Ratio of consecutive pair-coherent weights beyond the cut; it decreases
    // with n, so the remaining tail is dominated by a geometric series.
    const double ratio = xi_sq / ((n + 2.0) * (n + 2.0 + q));
    if (ratio >= 1.0) continue;
    const double log_tail = log_pc_weight(abs_xi, q, n + 1) + log_dominance -
                            std::log1p(-ratio);
    const double log_fraction = log_tail - partial.log_value();
    if (log_fraction < log_eps) {
      if (n >= kTruncationFloor) return {n, std::exp(log_fraction)};
      // Below the floor the bound only improves; evaluate it at the floor.
      LogSum floor_sum = partial;
      for (int m = n + 1; m <= kTruncationFloor; ++m) floor_sum.add(log_weight(m));
      const double floor_ratio =
          xi_sq / ((kTruncationFloor + 2.0) * (kTruncationFloor + 2.0 + q));
      const double floor_tail = log_pc_weight(abs_xi, q, kTruncationFloor + 1) +
                                log_dominance - std::log1p(-floor_ratio);
      return {kTruncationFloor, std::exp(floor_tail - floor_sum.log_value())};
    }
  }
  throw TruncationError("truncation: tail below " + std::to_string(tail_epsilon) +
                        " not reached within cap N = " + std::to_string(cap) +
                        " for |xi| = " + std::to_string(abs_xi) + ", q = " + std::to_string(q));
}

}  // namespace

void PairCatSpec::validate() const {
  if (q < 0) {
    throw ValidationError("pair cat spec: q must be >= 0 (relabel modes for negative q)");
  }
  if (!(tail_epsilon > 0.0 && tail_epsilon <= 1e-6)) {
    throw ValidationError("pair cat spec: tail_epsilon must lie in (0, 1e-6]");
  }
  if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()) || !std::isfinite(phi)) {
    throw ValidationError("pair cat spec: xi and phi must be finite");
  }
  if (truncation_cap < kTruncationFloor) {
    throw ValidationError("pair cat spec: truncation cap below the floor of " +
                          std::to_string(kTruncationFloor));
  }
}

double LadderState::norm() const {
  double sum = 0.0;
  for (const auto& c : coeffs) sum += std::norm(c);
  return std::sqrt(sum);
}

namespace fockspace {

Truncation certify_truncation(complex xi, int q, double tail_epsilon, int cap) {
  const double abs_xi = std::abs(xi);
  return certify(
      abs_xi, q, tail_epsilon, cap, [&](int n) { return log_pc_weight(abs_xi, q, n); }, 0.0);
}

int choose_truncation(complex xi, int q, double tail_epsilon, int cap) {
  return certify_truncation(xi, q, tail_epsilon, cap).n_max;
}

Truncation certify_cat_truncation(const PairCatSpec& spec) {
  spec.validate();
  const double abs_xi = std::abs(spec.xi);
  auto log_weight = [&](int n) {
    const double factor = std::norm(cat_factor(spec.phi, n));
    return factor == 0.0 ? kNegInf : log_pc_weight(abs_xi, spec.q, n) + std::log(factor);
  };
  // |1 + (-1)^n e^{i phi}|^2 <= 4
  return certify(abs_xi, spec.q, spec.tail_epsilon, spec.truncation_cap, log_weight,
                 std::log(4.0));
}

namespace {

// coeffs[n] = factor(n) xi^n / sqrt(n!(n+q)!), renormalized over the window.
template <typename Factor>
LadderState build_ladder(complex xi, int q, int n_max, Factor factor) {
  if (q < 0) throw ValidationError("ladder state: q must be non-negative");
  if (n_max < 0) throw ValidationError("ladder state: n_max must be non-negative");
  const double abs_xi = std::abs(xi);
  const double arg_xi = std::arg(xi);

  std::vector<double> log_mag(static_cast<std::size_t>(n_max) + 1);
  double max_log = kNegInf;
  for (int n = 0; n <= n_max; ++n) {
    log_mag[n] = 0.5 * log_pc_weight(abs_xi, q, n);
    max_log = std::max(max_log, log_mag[n]);
  }

  LadderState state;
  state.q = q;
  state.coeffs.resize(log_mag.size());
  double norm_sq = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const complex f = factor(n);
    if (f == complex(0.0) || log_mag[n] == kNegInf) {
      state.coeffs[n] = 0.0;
      continue;
    }
    state.coeffs[n] = f * std::polar(std::exp(log_mag[n] - max_log), n * arg_xi);
    norm_sq += std::norm(state.coeffs[n]);
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& c : state.coeffs) c *= inv;
  }
  return state;
}

}  // namespace

LadderState pair_coherent(complex xi, int q, int n_max) {
  return build_ladder(xi, q, n_max, [](int) { return complex(1.0); });
}

double pair_coherent_norm(complex xi, int q) {
  const double abs_xi = std::abs(xi);
  if (abs_xi == 0.0) return std::sqrt(std::exp(log_factorial(q)));
  return std::pow(std::pow(abs_xi, -q) * specfun::bessel_i(q, 2.0 * abs_xi), -0.5);
}

LadderState pair_cat(const PairCatSpec& spec) {
  const Truncation cut = certify_cat_truncation(spec);
  const double abs_xi = std::abs(spec.xi);

  // Relative norm of the unnormalized superposition |xi,q> + e^{i phi}|-xi,q>
  // with respect to a single pair coherent state: sum |f_n|^2 w_n / sum w_n.
  LogSum cat_sum;
  LogSum pc_sum;
  for (int n = 0; n <= cut.n_max; ++n) {
    const double lw = log_pc_weight(abs_xi, spec.q, n);
    pc_sum.add(lw);
    const double f = std::norm(cat_factor(spec.phi, n));
    if (f > 0.0) cat_sum.add(lw + std::log(f));
  }
  const double log_rel = cat_sum.log_value() - pc_sum.log_value();
  if (!(log_rel > std::log(kDegenerateNorm))) {
    throw DegenerateStateError("pair_cat: superposition is numerically null for |xi| = " +
                               std::to_string(abs_xi) + ", phi = " + std::to_string(spec.phi));
  }
  return build_ladder(spec.xi, spec.q, cut.n_max,
                      [&](int n) { return cat_factor(spec.phi, n); });
}

double pair_cat_norm(complex xi, int q, double phi) {
  const double abs_xi = std::abs(xi);
  const double nq = pair_coherent_norm(xi, q);
  // Alternating overlap sum; stable only for moderate |xi|.
  long double sum = 0.0L;
  long double term = std::exp(-static_cast<long double>(log_factorial(q)));
  const long double xi_sq = static_cast<long double>(abs_xi) * abs_xi;
  for (int n = 0; n < 4096; ++n) {
    sum += (n % 2 == 0) ? term : -term;
    term *= xi_sq / ((n + 1.0L) * (n + 1.0L + q));
    if (term < 1e-22L * std::abs(sum) && xi_sq < (n + 1.0L) * (n + 1.0L + q)) break;
    if (term == 0.0L) break;
  }
  const double inner = 1.0 + nq * nq * std::cos(phi) * static_cast<double>(sum);
  return std::sqrt(0.5) / std::sqrt(inner);
}

double CatScaleCheck::relative_error() const {
  return std::abs(from_coefficients - closed_form) / std::abs(closed_form);
}

CatScaleCheck cat_scale_check(const PairCatSpec& spec) {
  const LadderState state = pair_cat(spec);
  const double abs_xi = std::abs(spec.xi);
  // Use the largest coefficient to recover K.
  int best = 0;
  for (int n = 0; n <= state.n_max(); ++n) {
    if (std::abs(state.coeffs[n]) > std::abs(state.coeffs[best])) best = n;
  }
  const double log_basis = 0.5 * log_pc_weight(abs_xi, spec.q, best);
  const double factor = std::abs(cat_factor(spec.phi, best));
  CatScaleCheck check;
  check.from_coefficients = std::abs(state.coeffs[best]) / (factor * std::exp(log_basis));
  check.closed_form = pair_cat_norm(spec.xi, spec.q, spec.phi) * pair_coherent_norm(spec.xi, spec.q);
  return check;
}

LadderState apply_pair_annihilation(const LadderState& state) {
  LadderState out;
  out.q = state.q;
  out.coeffs.assign(state.coeffs.size(), complex(0.0));
  for (int n = 0; n < state.n_max(); ++n) {
    out.coeffs[n] = std::sqrt((n + 1.0) * (n + 1.0 + state.q)) * state.coeffs[n + 1];
  }
  return out;
}

int number_difference(const LadderState& state) { return state.q; }

}  // namespace fockspace

void to_json(nlohmann::json& j, const LadderState& state) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : state.coeffs) coeffs.push_back({c.real(), c.imag()});
  j = nlohmann::json{{"q", state.q}, {"coeffs", std::move(coeffs)}};
}

void from_json(const nlohmann::json& j, LadderState& state) {
  state.q = j.at("q").get<int>();
  state.coeffs.clear();
  for (const auto& pair : j.at("coeffs")) {
    state.coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
}

}  // namespace paircat
