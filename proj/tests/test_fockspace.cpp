#include <cmath>
#include <numbers>

#include "doctest.h"
#include "json.hpp"
#include "paircat/errors.hpp"
#include "paircat/fockspace.hpp"

using namespace paircat;
constexpr double pi = std::numbers::pi;

namespace {
PairCatSpec cat_spec(double xi, int q, double phi) {
  PairCatSpec s;
  s.xi = xi;
  s.q = q;
  s.phi = phi;
  return s;
}
}  // namespace

// Reference amplitudes were computed with mpmath at 40 digits over 80 terms.

TEST_CASE("pair coherent amplitudes") {
  const LadderState s = fockspace::pair_coherent(1.0, 0, 30);
  CHECK(s.q == 0);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
  // c_0 = I_0(2)^(-1/2)
  CHECK(s.coeffs[0].real() == doctest::Approx(0.66232641487188833).epsilon(1e-15));
  const LadderState t = fockspace::pair_coherent(2.0, 3, 60);
  CHECK(t.coeffs[0].real() == doctest::Approx(0.63208185029471238).epsilon(1e-14));
  CHECK(t.coeffs[1].real() == doctest::Approx(0.63208185029471238).epsilon(1e-14));
  CHECK(fockspace::number_difference(t) == 3);
}

TEST_CASE("pair coherent phase follows xi^n") {
  const std::complex<double> xi = std::polar(1.5, 0.4);
  const LadderState s = fockspace::pair_coherent(xi, 1, 30);
  for (int n = 1; n < 10; ++n) {
    CHECK(std::arg(s.coeffs[n] / s.coeffs[n - 1]) == doctest::Approx(0.4).epsilon(1e-12));
  }
}

TEST_CASE("pair coherent normalization from the Bessel series") {
  const double xi = 2.0;
  const int q = 3;
  const double n_q = fockspace::pair_coherent_norm(xi, q);
  CHECK(n_q == doctest::Approx(1.0 / std::sqrt(std::pow(xi, -q) * std::cyl_bessel_i(q, 2 * xi))).epsilon(1e-13));
}

TEST_CASE("pair cat amplitudes and parity") {
  const LadderState cat = fockspace::pair_cat(cat_spec(1.0, 0, pi / 2));
  CHECK(cat.coeffs[0].real() == doctest::Approx(0.46833549931488684).epsilon(1e-14));
  CHECK(cat.coeffs[0].imag() == doctest::Approx(0.46833549931488684).epsilon(1e-14));
  CHECK(cat.coeffs[1].imag() == doctest::Approx(-0.46833549931488684).epsilon(1e-14));
  CHECK(cat.coeffs[3].real() == doctest::Approx(0.07805591655248114).epsilon(1e-14));

  const LadderState even = fockspace::pair_cat(cat_spec(3.0, 2, 0.0));
  const LadderState odd = fockspace::pair_cat(cat_spec(3.0, 2, pi));
  for (int n = 1; n <= even.n_max(); n += 2) CHECK(even.coeffs[n] == std::complex<double>(0.0, 0.0));
  for (int n = 0; n <= odd.n_max(); n += 2) CHECK(odd.coeffs[n] == std::complex<double>(0.0, 0.0));
  CHECK(even.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(odd.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("odd cat of the vacuum is degenerate") {
  CHECK_THROWS_AS(fockspace::pair_cat(cat_spec(0.0, 1, pi)), DegenerateStateError);
}

TEST_CASE("cat scale matches the closed form") {
  for (double xi : {0.5, 2.0, 6.0}) {
    for (double phi : {0.0, pi / 2, 2.0}) {
      CHECK(fockspace::cat_scale_check(cat_spec(xi, 1, phi)).relative_error() < 1e-10);
    }
  }
}

TEST_CASE("truncation is certified and monotone") {
  const auto t = fockspace::certify_truncation(10.0, 0, 1e-24);
  CHECK(t.n_max <= 40);
  CHECK(t.tail_bound <= 1e-24);
  CHECK(fockspace::choose_truncation(0.1, 0, 1e-24) == kTruncationFloor);
  CHECK(fockspace::choose_truncation(20.0, 1, 1e-24) > fockspace::choose_truncation(10.0, 1, 1e-24));
  CHECK(fockspace::choose_truncation(10.0, 1, 1e-12) <= fockspace::choose_truncation(10.0, 1, 1e-24));
  CHECK_THROWS_AS(fockspace::choose_truncation(60.0, 0, 1e-24, 20), TruncationError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(cat_spec(1.0, -1, 0.0).validate(), ValidationError);
  PairCatSpec s = cat_spec(1.0, 0, 0.0);
  s.tail_epsilon = 0.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s = cat_spec(std::nan(""), 0, 0.0);
  CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("ladder state json round trip") {
  const LadderState cat = fockspace::pair_cat(cat_spec(1.5, 2, 0.3));
  const nlohmann::json j = cat;
  const LadderState back = j.get<LadderState>();
  CHECK(back.q == cat.q);
  REQUIRE(back.coeffs.size() == cat.coeffs.size());
  for (std::size_t n = 0; n < cat.coeffs.size(); ++n) CHECK(back.coeffs[n] == cat.coeffs[n]);
}
