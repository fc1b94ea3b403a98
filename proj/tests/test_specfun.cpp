#include <cmath>
#include <numbers>

#include "doctest.h"
#include "paircat/errors.hpp"
#include "paircat/specfun.hpp"

using namespace paircat;

// Reference values below were computed with mpmath at 40 digits.

TEST_CASE("log_factorial: exact small range and lgamma tail") {
  CHECK(specfun::log_factorial(0) == 0.0);
  CHECK(specfun::log_factorial(1) == 0.0);
  CHECK(specfun::log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-16));
  CHECK(specfun::log_factorial(25) == doctest::Approx(58.003605222980519939).epsilon(1e-15));
  CHECK(specfun::log_factorial(170) == doctest::Approx(706.5730622457873471).epsilon(1e-15));
  CHECK_THROWS_AS(specfun::log_factorial(-1), ValidationError);
}

TEST_CASE("bessel_i against reference values") {
  CHECK(specfun::bessel_i(0, 0.0) == 1.0);
  CHECK(specfun::bessel_i(3, 0.0) == 0.0);
  CHECK(specfun::bessel_i(0, 2.0) == doctest::Approx(2.2795853023360672674).epsilon(1e-15));
  CHECK(specfun::bessel_i(3, 7.5) == doctest::Approx(142.06144236359167641).epsilon(1e-14));
  CHECK(specfun::bessel_i(10, 40.0) == doctest::Approx(4228469210516759.2348).epsilon(1e-13));
}

TEST_CASE("bessel_i recurrence I_{q-1} - I_{q+1} = (2q/x) I_q") {
  for (double x : {0.3, 4.0, 25.0}) {
    for (int q = 1; q < 12; ++q) {
      const double lhs = specfun::bessel_i(q - 1, x) - specfun::bessel_i(q + 1, x);
      const double rhs = 2.0 * q / x * specfun::bessel_i(q, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("bessel_i overflow and domain") {
  CHECK_THROWS_AS(specfun::bessel_i(0, 800.0), OverflowError);
  CHECK_THROWS_AS(specfun::bessel_i(-1, 1.0), ValidationError);
  CHECK_THROWS_AS(specfun::bessel_i(0, -1.0), ValidationError);
}

TEST_CASE("oscillator_column matches explicit Hermite polynomials") {
  // H_0..H_6 by the physicists' recurrence in long double
  const long double x = 1.3L;
  long double h[7];
  h[0] = 1.0L;
  h[1] = 2.0L * x;
  for (int n = 1; n < 6; ++n) h[n + 1] = 2.0L * x * h[n] - 2.0L * n * h[n - 1];
  const auto col = specfun::oscillator_column(1.3, 6);
  REQUIRE(col.values.size() == 7);
  long double fact = 1.0L;
  for (int n = 0; n <= 6; ++n) {
    if (n > 0) fact *= n;
    const long double expected =
        h[n] * std::exp(-x * x / 2) / std::sqrt(std::pow(2.0L, n) * fact * std::sqrt(std::numbers::pi_v<long double>));
    CHECK(col.values[n] == doctest::Approx(static_cast<double>(expected)).epsilon(1e-14));
  }
  CHECK(col.values[3] == doctest::Approx(0.092023768909419682982).epsilon(1e-14));
}

TEST_CASE("oscillator_column at high order and far out") {
  CHECK(specfun::oscillator_column(2.5, 60).values[60] ==
        doctest::Approx(-0.12915237756868776149).epsilon(1e-12));
  const auto far = specfun::oscillator_column(40.0, 512);
  for (double v : far.values) CHECK(std::isfinite(v));
  CHECK(far.values[0] == 0.0);
  CHECK(far.values[512] != 0.0);
}

TEST_CASE("oscillator_column parity") {
  const auto plus = specfun::oscillator_column(3.7, 40);
  const auto minus = specfun::oscillator_column(-3.7, 40);
  for (int n = 0; n <= 40; ++n) CHECK(minus.values[n] == (n % 2 ? -plus.values[n] : plus.values[n]));
}
