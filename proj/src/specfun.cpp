#include "paircat/specfun.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "paircat/errors.hpp"

namespace paircat::specfun {

namespace {

constexpr double kSeriesTailRatio = 1e-17;
constexpr int kSeriesMaxTerms = 10000;

// Rescaling step used by the scaled summations below.
constexpr double kRescale = 1e200;
const double kLogRescale = std::log(kRescale);

}  // namespace

double log_factorial(int n) {
  if (n < 0) {
    throw ValidationError("log_factorial: negative argument " + std::to_string(n));
  }
  if (n <= 20) {
    std::uint64_t product = 1;
    for (int k = 2; k <= n; ++k) product *= static_cast<std::uint64_t>(k);
    return std::log(static_cast<double>(product));
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double bessel_i(int q, double x) {
  if (q < 0) throw ValidationError("bessel_i: negative order " + std::to_string(q));
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw ValidationError("bessel_i: argument must be finite and non-negative");
  }
  if (x == 0.0) return q == 0 ? 1.0 : 0.0;

  const double half = 0.5 * x;
  const double quarter_sq = half * half;
  // I_q(x) = (x/2)^q / q! * sum_k r_k,  r_0 = 1,  r_{k+1} = r_k (x/2)^2 / ((k+1)(k+1+q))
  const double log_prefactor = q * std::log(half) - log_factorial(q);

  double term = 1.0;
  double sum = 1.0;
  double log_shift = 0.0;
  bool converged = false;
  for (int k = 0; k < kSeriesMaxTerms; ++k) {
    const double ratio = quarter_sq / ((k + 1.0) * (k + 1.0 + q));
    term *= ratio;
    sum += term;
    if (sum > kRescale) {
      sum /= kRescale;
      term /= kRescale;
      log_shift += kLogRescale;
    }
    if (ratio < 1.0 && term < kSeriesTailRatio * sum) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw OverflowError("bessel_i: series for I_" + std::to_string(q) + "(" +
                        std::to_string(x) + ") did not converge within " +
                        std::to_string(kSeriesMaxTerms) + " terms");
  }
  const double log_result = log_prefactor + log_shift + std::log(sum);
  if (log_result >= std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("bessel_i: I_" + std::to_string(q) + "(" + std::to_string(x) +
                        ") exceeds the double range");
  }
  return std::exp(log_result);
}

WavefunctionColumn oscillator_column(double x, int n_max) {
  if (n_max < 0) {
    throw ValidationError("oscillator_column: negative n_max " + std::to_string(n_max));
  }
  WavefunctionColumn column;
  column.x = x;
  column.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

  const double log_ground = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);

  // Recurrence on scaled values: phi_n = v_n * exp(shift at the time v_n was produced).
  double shift = log_ground;
  double prev = 0.0;
  double curr = 1.0;
  column.values[0] = std::exp(shift);
  for (int n = 0; n < n_max; ++n) {
    const double next = std::sqrt(2.0 / (n + 1.0)) * x * curr -
                        std::sqrt(static_cast<double>(n) / (n + 1.0)) * prev;
    prev = curr;
    curr = next;
    if (std::abs(curr) > kRescale) {
      curr /= kRescale;
      prev /= kRescale;
      shift += kLogRescale;
    }
    column.values[static_cast<std::size_t>(n) + 1] = curr * std::exp(shift);
  }
  return column;
}

}  // namespace paircat::specfun
