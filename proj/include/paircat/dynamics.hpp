#pragma once

#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "paircat/fockspace.hpp"

namespace paircat {

// Coupling profiles lambda(t). Times are in the same units as the profile
// parameters; the runner works in scaled time lambda*t.

struct ConstantCoupling {
  double lambda = 1.0;
};

/// lambda(t) = lambda * sinh(varpi * t)
struct SinhCoupling {
  double lambda = 1.0;
  double varpi = 0.5;
};

/// Linear interpolation between knots (t, lambda); zero before the first knot,
/// undefined after the last.
struct PiecewiseCoupling {
  std::vector<std::pair<double, double>> knots;
};

using CouplingProfile = std::variant<ConstantCoupling, SinhCoupling, PiecewiseCoupling>;

enum class InternalState { excited, ground };

// Joint ion-motion amplitudes in the invariant-block basis of the exchange
// interaction a1^dag a2 sigma_- + h.c. For block n the excited member is
// |e, n, n+q> and the ground member is |g, n+1, n+q-1>. The ground state
// |g, 0, q-2> (q >= 2) never couples and is stored as g_floor. For q = 0 the
// ground member of block 0 does not exist and g_amp[0] must stay zero.
struct JointState {
  int q = 0;
  std::vector<complex> e_amp;
  std::vector<complex> g_amp;
  complex g_floor{0.0, 0.0};

  int n_max() const { return static_cast<int>(e_amp.size()) - 1; }
  bool has_ground_member(int n) const { return n + q - 1 >= 0; }
  bool has_floor() const { return q >= 2; }
  double norm() const;
  /// Throws ValidationError on inconsistent sizes or amplitude on missing states.
  void validate() const;
};

/// One populated basis component with its two-mode Fock labels.
struct Component {
  bool excited = false;
  int n1 = 0;
  int n2 = 0;
  complex amplitude;
};

namespace dynamics {

void validate(const CouplingProfile& profile);
double coupling_at(const CouplingProfile& profile, double t);

/// alpha(t) = integral of lambda over [0, t].
double pulse_area(const CouplingProfile& profile, double t);

/// Places a ladder state in the chosen internal state. An excited start keeps
/// the ladder charge; a ground start |g, n, n+q> lives in the blocks of charge q+2.
JointState make_joint_state(const LadderState& vibrational, InternalState internal);

/// Every basis state of the representation, in storage order, amplitudes included.
std::vector<Component> components(const JointState& state);

double block_frequency(int q, int n);

/// Exact propagator exp(-i alpha H0) applied block by block.
JointState evolve_by_area(const JointState& initial, double alpha);
JointState evolve_analytic(const JointState& initial, const CouplingProfile& profile, double t);

struct ConservedQuantities {
  /// Probability of each total quanta count n1 + n2.
  std::map<int, double> total_quanta;
  /// n2 - (excited ? 1 : 0) agrees between the two members of every block.
  bool charge_consistent = true;
};
ConservedQuantities conserved_quantities(const JointState& state);

}  // namespace dynamics
}  // namespace paircat
