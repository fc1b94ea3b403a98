#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "paircat/dynamics.hpp"
#include "paircat/errors.hpp"
#include "paircat/oracle.hpp"

using namespace paircat;
constexpr double pi = std::numbers::pi;

namespace {
LadderState fock(int q, int n, int n_max) {
  LadderState s;
  s.q = q;
  s.coeffs.assign(n_max + 1, 0.0);
  s.coeffs[n] = 1.0;
  return s;
}

LadderState cat(double xi, int q, double phi) {
  PairCatSpec s;
  s.xi = xi;
  s.q = q;
  s.phi = phi;
  return fockspace::pair_cat(s);
}

double distance(const JointState& a, const JointState& b) {
  return (dynamics::to_dense(a) - dynamics::to_dense(b)).norm();
}
}  // namespace

TEST_CASE("Rabi oscillation of a single block") {
  // |e, n, n+q> couples to |g, n+1, n+q-1> at frequency sqrt((n+1)(n+q))
  for (int q : {1, 3}) {
    for (int n : {0, 2}) {
      const JointState psi0 = dynamics::make_joint_state(fock(q, n, 4), InternalState::excited);
      const double omega = std::sqrt((n + 1.0) * (n + q));
      CHECK(dynamics::block_frequency(q, n) == doctest::Approx(omega));
      for (double alpha : {0.3, 1.9}) {
        const JointState psi = dynamics::evolve_by_area(psi0, alpha);
        CHECK(std::abs(psi.e_amp[n] - std::cos(omega * alpha)) < 1e-15);
        CHECK(std::abs(psi.g_amp[n] - complex(0.0, -std::sin(omega * alpha))) < 1e-15);
      }
    }
  }
}

TEST_CASE("stationary states do not move") {
  const JointState vac = dynamics::make_joint_state(fock(0, 0, 3), InternalState::excited);
  const JointState moved = dynamics::evolve_by_area(vac, 7.3);
  CHECK(moved.e_amp[0] == complex(1.0));
  CHECK(moved.g_amp[0] == complex(0.0));

  // |g, 0, q> is the floor of charge q+2
  const JointState floor = dynamics::make_joint_state(fock(2, 0, 3), InternalState::ground);
  CHECK(floor.q == 4);
  CHECK(floor.g_floor == complex(1.0));
  CHECK(dynamics::evolve_by_area(floor, 4.0).g_floor == complex(1.0));
}

TEST_CASE("ground start maps onto the shifted blocks") {
  const LadderState s = cat(1.2, 1, 0.4);
  const JointState g = dynamics::make_joint_state(s, InternalState::ground);
  CHECK(g.q == 3);
  for (const auto& c : dynamics::components(g)) {
    if (c.amplitude == complex(0.0)) continue;
    CHECK_FALSE(c.excited);
    CHECK(c.n2 - c.n1 == 1);
  }
  CHECK(g.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("evolution composes and preserves norm") {
  const JointState psi0 = dynamics::make_joint_state(cat(4.0, 2, pi / 2), InternalState::excited);
  const JointState two_step = dynamics::evolve_by_area(dynamics::evolve_by_area(psi0, 1.25), 2.5);
  CHECK(distance(two_step, dynamics::evolve_by_area(psi0, 3.75)) < 1e-13);
  CHECK(two_step.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(distance(dynamics::evolve_by_area(dynamics::evolve_by_area(psi0, 2.0), -2.0), psi0) < 1e-13);
}

TEST_CASE("dynamics depend on the profile only through the pulse area") {
  const JointState psi0 = dynamics::make_joint_state(cat(3.0, 1, 0.0), InternalState::excited);
  const SinhCoupling sinh{0.8, 0.5};
  const double t = 2.7;
  const double alpha = dynamics::pulse_area(sinh, t);
  CHECK(alpha == doctest::Approx(0.8 * (std::cosh(0.5 * t) - 1.0) / 0.5).epsilon(1e-14));
  CHECK(distance(dynamics::evolve_analytic(psi0, sinh, t),
                 dynamics::evolve_analytic(psi0, ConstantCoupling{1.0}, alpha)) < 1e-13);
}

TEST_CASE("pulse areas") {
  CHECK(dynamics::pulse_area(ConstantCoupling{2.0}, 3.0) == 6.0);
  CHECK(dynamics::pulse_area(SinhCoupling{1.0, 0.5}, 1e-9) == doctest::Approx(0.25e-18).epsilon(1e-6));
  const PiecewiseCoupling ramp{{{1.0, 0.0}, {3.0, 2.0}, {4.0, 2.0}}};
  CHECK(dynamics::coupling_at(ramp, 0.5) == 0.0);
  CHECK(dynamics::coupling_at(ramp, 2.0) == doctest::Approx(1.0));
  CHECK(dynamics::pulse_area(ramp, 1.0) == 0.0);
  CHECK(dynamics::pulse_area(ramp, 3.0) == doctest::Approx(2.0));
  CHECK(dynamics::pulse_area(ramp, 4.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(dynamics::pulse_area(ramp, 4.5), OutOfRangeError);
  CHECK_THROWS_AS(dynamics::validate(PiecewiseCoupling{{{2.0, 1.0}, {1.0, 1.0}}}), ValidationError);
  CHECK_THROWS_AS(dynamics::validate(SinhCoupling{1.0, 0.0}), ValidationError);
}

TEST_CASE("conserved quantities") {
  const JointState psi0 = dynamics::make_joint_state(cat(2.0, 1, 0.3), InternalState::excited);
  const auto before = dynamics::conserved_quantities(psi0);
  const auto after = dynamics::conserved_quantities(dynamics::evolve_by_area(psi0, 5.5));
  CHECK(after.charge_consistent);
  REQUIRE(before.total_quanta.size() == after.total_quanta.size());
  for (const auto& [total, p] : before.total_quanta) {
    CHECK(after.total_quanta.at(total) == doctest::Approx(p).epsilon(1e-13));
  }
}

TEST_CASE("oracle generator spectrum") {
  // charge 2, n = 0..3: blocks give +-sqrt((n+1)(n+2)), the floor gives 0
  const dynamics::DenseGenerator gen = dynamics::build_dense_generator(2, 3);
  const Eigen::MatrixXd h = Eigen::MatrixXd(gen.matrix);
  CHECK((h - h.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  std::vector<double> got(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
  std::vector<double> expected{0.0};
  for (int n = 0; n <= 3; ++n) {
    expected.push_back(std::sqrt((n + 1.0) * (n + 2.0)));
    expected.push_back(-std::sqrt((n + 1.0) * (n + 2.0)));
  }
  std::sort(expected.begin(), expected.end());
  REQUIRE(got.size() == expected.size());
  for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k] == doctest::Approx(expected[k]).epsilon(1e-13));
}

TEST_CASE("dense round trip and oracle agreement") {
  const JointState psi0 = dynamics::make_joint_state(cat(2.5, 0, pi / 2), InternalState::excited);
  const JointState back = dynamics::from_dense(dynamics::to_dense(psi0), psi0.q, psi0.n_max());
  CHECK(distance(back, psi0) == 0.0);

  const SinhCoupling profile{1.0, 0.5};
  const double t = 2.0;
  const auto oracle = dynamics::evolve_oracle(psi0, profile, t, dynamics::oracle_steps(profile, t, 20000.0));
  CHECK(oracle.path_difference < dynamics::kOraclePathAgreement);
  CHECK(distance(oracle.exponential, dynamics::evolve_analytic(psi0, profile, t)) < 1e-10);
  CHECK_THROWS_AS(dynamics::evolve_oracle(psi0, profile, t, 10), ValidationError);
}
