#pragma once

#include <vector>

namespace paircat::specfun {

/// ln(n!). Exact integer product for n <= 20, log-gamma beyond.
double log_factorial(int n);

/// Modified Bessel function of the first kind I_q(x) for integer order q >= 0
/// and x >= 0, summed from the ascending series. Throws OverflowError when the
/// result is not representable as a double.
double bessel_i(int q, double x);

/// Normalized harmonic-oscillator position wavefunctions phi_0(x)..phi_nmax(x).
struct WavefunctionColumn {
  double x = 0.0;
  std::vector<double> values;
};

// Built from the normalized three-term recurrence; H_n and n! are never formed
// separately, so large n does not overflow. Entries that underflow the ground
// state Gaussian are carried through a running log scale.
WavefunctionColumn oscillator_column(double x, int n_max);

}  // namespace paircat::specfun
