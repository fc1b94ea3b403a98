#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "paircat/dynamics.hpp"

namespace paircat {

/// Reduced density operator of the internal state, basis order (e, g).
struct QubitDensity {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

  /// (larger, smaller) eigenvalue, each clamped to [0, 1].
  std::pair<double, double> eigenvalues() const;
  /// Hermitian within 1e-13, unit trace within 1e-12, spectrum inside [-1e-12, 1+1e-12].
  bool is_valid() const;
};

enum class LogBase { natural, two };
enum class InversionSign { excited_minus_ground, ground_minus_excited };

/// Sampled observables, one entry per scaled time lambda*t.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> alpha;
  std::vector<double> inversion;
  std::vector<double> s_vn_atom;
  std::vector<double> s_vn_field;
  std::vector<double> s_lin_2;
  std::vector<double> s_lin_3;
  std::vector<double> norm_error;

  std::size_t size() const { return times.size(); }
  void resize(std::size_t n);
};

namespace observables {

/// Negative eigenvalues down to this size are treated as round-off.
inline constexpr double kEigenClamp = 1e-12;

double atomic_inversion(const JointState& state,
                        InversionSign sign = InversionSign::excited_minus_ground);

/// Partial trace over both vibrational modes. Coherences pair amplitudes with
/// identical Fock labels only.
QubitDensity reduced_atom(const JointState& state);

double von_neumann_entropy(const QubitDensity& rho, LogBase base = LogBase::natural);

/// 1 - Tr rho^order, order >= 2.
double linear_entropy(const QubitDensity& rho, int order);

/// Entropy from a list of probabilities with 0 log 0 = 0.
double entropy_of_spectrum(const std::vector<double>& spectrum, LogBase base = LogBase::natural);

/// Nonzero spectrum of the field reduced density, descending. The density is
/// block diagonal in the charge n2 - n1; each block's spectrum comes from the
/// Gram matrix of its internal-state slices.
std::vector<double> field_spectrum(const JointState& state);

/// Field entropy of a pure joint state (equal to the atomic entropy).
double field_entropy(const JointState& state);

struct EntropyAgreement {
  double atom = 0.0;
  double field = 0.0;
  /// Largest eigenvalue mismatch between the atomic and field spectra.
  double spectral_difference = 0.0;
};
EntropyAgreement field_entropy_check(const JointState& state);

}  // namespace observables
}  // namespace paircat
