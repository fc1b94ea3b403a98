#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "paircat/dynamics.hpp"

namespace paircat::dynamics {

// Brute-force reference for the block propagator: the interaction is assembled
// from its operator action on explicit two-mode Fock labels and integrated
// numerically, so it shares no code with the block rotation.

struct DenseGenerator {
  /// (excited, n1, n2) for each row, same order as components().
  std::vector<Component> basis;
  Eigen::SparseMatrix<double> matrix;
};

DenseGenerator build_dense_generator(int q, int n_max);

Eigen::VectorXcd to_dense(const JointState& state);
JointState from_dense(const Eigen::VectorXcd& vec, int q, int n_max);

/// Largest |psi| drift tolerated during integration.
inline constexpr double kOracleNormDrift = 1e-7;
/// The one-step integrator and the matrix exponential must agree this closely.
inline constexpr double kOraclePathAgreement = 1e-9;

struct OracleResult {
  JointState integrated;   // classic 4th-order Runge-Kutta in t
  JointState exponential;  // exp(-i alpha H0) by scaling and squaring
  double path_difference = 0.0;
};

/// Requires steps >= max(1, 1000 * |alpha(t)|). Throws NormDriftError on drift
/// and NumericalGuardError if the two paths disagree beyond kOraclePathAgreement.
OracleResult evolve_oracle(const JointState& initial, const CouplingProfile& profile, double t,
                           long steps);

/// Smallest admissible step count for evolve_oracle scaled by `per_unit_area`.
long oracle_steps(const CouplingProfile& profile, double t, double per_unit_area = 1000.0);

}  // namespace paircat::dynamics
