#pragma once

#include <complex>
#include <vector>

#include "json.hpp"

namespace paircat {

using complex = std::complex<double>;

/// Default discarded-probability budget for truncation.
inline constexpr double kDefaultTailEpsilon = 1e-24;
inline constexpr int kDefaultTruncationCap = 4096;
inline constexpr int kTruncationFloor = 16;

/// Physical parameters of a pair cat state plus the truncation policy.
struct PairCatSpec {
  complex xi{0.0, 0.0};
  int q = 0;
  double phi = 0.0;
  double tail_epsilon = kDefaultTailEpsilon;
  int truncation_cap = kDefaultTruncationCap;

  /// Throws ValidationError unless q >= 0 and 0 < tail_epsilon <= 1e-6.
  void validate() const;
};

/// Amplitudes over the charge-q ladder: coeffs[n] multiplies |n, n+q>.
struct LadderState {
  int q = 0;
  std::vector<complex> coeffs;

  int n_max() const { return static_cast<int>(coeffs.size()) - 1; }
  double norm() const;
};

struct Truncation {
  int n_max = 0;
  /// Certified upper bound on the discarded probability.
  double tail_bound = 0.0;
};

namespace fockspace {

int choose_truncation(complex xi, int q, double tail_epsilon,
                      int cap = kDefaultTruncationCap);

/// Same search, also returning the certified tail bound at the chosen cut.
Truncation certify_truncation(complex xi, int q, double tail_epsilon,
                              int cap = kDefaultTruncationCap);

/// Truncation certified for the cat-weighted distribution of `spec`.
Truncation certify_cat_truncation(const PairCatSpec& spec);

/// Pair coherent state |xi, q> on n = 0..n_max, renormalized over the window.
LadderState pair_coherent(complex xi, int q, int n_max);

/// N_q = [|xi|^-q I_q(2|xi|)]^(-1/2). Throws OverflowError for very large |xi|.
double pair_coherent_norm(complex xi, int q);

LadderState pair_cat(const PairCatSpec& spec);

/// Closed-form cat normalization N_phi (using N_q from the Bessel series and the
/// alternating overlap sum). Only reliable for |xi| <= 8; see cat_scale_check.
double pair_cat_norm(complex xi, int q, double phi);

// Compares the amplitude scale K of a constructed cat state, where
// coeffs[n] = K (1 + (-1)^n e^{i phi}) xi^n / sqrt(n! (n+q)!), against the
// closed-form product N_phi * N_q.
struct CatScaleCheck {
  double from_coefficients = 0.0;
  double closed_form = 0.0;
  double relative_error() const;
};
CatScaleCheck cat_scale_check(const PairCatSpec& spec);

/// Action of the pair annihilation operator ab on the ladder (not renormalized).
LadderState apply_pair_annihilation(const LadderState& state);

/// Eigenvalue of a^dag a - b^dag b in the ladder convention; structural.
int number_difference(const LadderState& state);

}  // namespace fockspace

void to_json(nlohmann::json& j, const LadderState& state);
void from_json(const nlohmann::json& j, LadderState& state);

}  // namespace paircat
