#include "paircat/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <tuple>

#include <unsupported/Eigen/MatrixFunctions>

#include "paircat/errors.hpp"

namespace paircat::dynamics {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

using Label = std::tuple<bool, int, int>;

JointState empty_state(int q, int n_max) {
  JointState s;
  s.q = q;
  s.e_amp.assign(static_cast<std::size_t>(n_max) + 1, complex(0.0));
  s.g_amp.assign(static_cast<std::size_t>(n_max) + 1, complex(0.0));
  return s;
}

}  // namespace

DenseGenerator build_dense_generator(int q, int n_max) {
  if (q < 0 || n_max < 0) throw ValidationError("build_dense_generator: q, n_max must be >= 0");
  DenseGenerator gen;
  gen.basis = components(empty_state(q, n_max));
  std::map<Label, int> index;
  for (std::size_t k = 0; k < gen.basis.size(); ++k) {
    const auto& b = gen.basis[k];
    index[{b.excited, b.n1, b.n2}] = static_cast<int>(k);
  }

  // H0 = a1^dag a2 sigma_- + a2^dag a1 sigma_+ applied to every basis ket.
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t col = 0; col < gen.basis.size(); ++col) {
    const auto& b = gen.basis[col];
    Label target;
    double amplitude = 0.0;
    if (b.excited) {
      if (b.n2 == 0) continue;
      amplitude = std::sqrt(b.n1 + 1.0) * std::sqrt(static_cast<double>(b.n2));
      target = {false, b.n1 + 1, b.n2 - 1};
    } else {
      if (b.n1 == 0) continue;
      amplitude = std::sqrt(static_cast<double>(b.n1)) * std::sqrt(b.n2 + 1.0);
      target = {true, b.n1 - 1, b.n2 + 1};
    }
    const auto it = index.find(target);
    if (it == index.end()) {
      throw NumericalGuardError("build_dense_generator: basis not closed under H0");
    }
    entries.emplace_back(it->second, static_cast<int>(col), amplitude);
  }
  const auto dim = static_cast<Eigen::Index>(gen.basis.size());
  gen.matrix.resize(dim, dim);
  gen.matrix.setFromTriplets(entries.begin(), entries.end());
  return gen;
}

Eigen::VectorXcd to_dense(const JointState& state) {
  const auto comps = components(state);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(comps.size()));
  for (std::size_t k = 0; k < comps.size(); ++k) v(static_cast<Eigen::Index>(k)) = comps[k].amplitude;
  return v;
}

JointState from_dense(const Eigen::VectorXcd& vec, int q, int n_max) {
  JointState s = empty_state(q, n_max);
  Eigen::Index k = 0;
  for (int n = 0; n <= n_max; ++n) s.e_amp[n] = vec(k++);
  for (int n = 0; n <= n_max; ++n) {
    if (s.has_ground_member(n)) s.g_amp[n] = vec(k++);
  }
  if (s.has_floor()) s.g_floor = vec(k++);
  if (k != vec.size()) throw ValidationError("from_dense: vector size does not match the basis");
  return s;
}

long oracle_steps(const CouplingProfile& profile, double t, double per_unit_area) {
  const double alpha = std::abs(pulse_area(profile, t));
  return std::max(1L, static_cast<long>(std::ceil(per_unit_area * alpha)));
}

OracleResult evolve_oracle(const JointState& initial, const CouplingProfile& profile, double t,
                           long steps) {
  initial.validate();
  validate(profile);
  const double alpha = pulse_area(profile, t);
  if (steps < oracle_steps(profile, t)) {
    throw ValidationError("evolve_oracle: need at least " +
                          std::to_string(oracle_steps(profile, t)) + " steps, got " +
                          std::to_string(steps));
  }
  const DenseGenerator gen = build_dense_generator(initial.q, initial.n_max());
  const Eigen::VectorXcd psi0 = to_dense(initial);
  const double norm0 = psi0.norm();

  // Runge-Kutta: d psi / dt = -i lambda(t) H0 psi. H0 is real, so each stage
  // applies it to the real and imaginary parts separately.
  const Eigen::SparseMatrix<double>& h0 = gen.matrix;
  const Eigen::Index dim = psi0.size();
  Eigen::VectorXd re = psi0.real();
  Eigen::VectorXd im = psi0.imag();
  Eigen::VectorXd k_re[4], k_im[4];
  for (auto* k : {k_re, k_im}) {
    for (int s = 0; s < 4; ++s) k[s].resize(dim);
  }
  Eigen::VectorXd stage_re(dim), stage_im(dim);
  // (re, im)' = lambda * (H0 im, -H0 re)
  const auto derivative = [&](double l, const Eigen::VectorXd& r, const Eigen::VectorXd& i,
                              Eigen::VectorXd& out_re, Eigen::VectorXd& out_im) {
    out_re.noalias() = h0 * i;
    out_re *= l;
    out_im.noalias() = h0 * r;
    out_im *= -l;
  };
  const double h = t / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    const double t0 = h * static_cast<double>(k);
    const double l0 = coupling_at(profile, t0);
    const double lm = coupling_at(profile, t0 + 0.5 * h);
    const double l1 = coupling_at(profile, std::min(t0 + h, t));
    derivative(l0, re, im, k_re[0], k_im[0]);
    stage_re = re + 0.5 * h * k_re[0];
    stage_im = im + 0.5 * h * k_im[0];
    derivative(lm, stage_re, stage_im, k_re[1], k_im[1]);
    stage_re = re + 0.5 * h * k_re[1];
    stage_im = im + 0.5 * h * k_im[1];
    derivative(lm, stage_re, stage_im, k_re[2], k_im[2]);
    stage_re = re + h * k_re[2];
    stage_im = im + h * k_im[2];
    derivative(l1, stage_re, stage_im, k_re[3], k_im[3]);
    re += (h / 6.0) * (k_re[0] + 2.0 * k_re[1] + 2.0 * k_re[2] + k_re[3]);
    im += (h / 6.0) * (k_im[0] + 2.0 * k_im[1] + 2.0 * k_im[2] + k_im[3]);
    const double drift = std::sqrt(re.squaredNorm() + im.squaredNorm()) - norm0;
    if (std::abs(drift) > kOracleNormDrift) {
      throw NormDriftError("evolve_oracle: norm drifted by " + sci(drift) + " at step " +
                           std::to_string(k + 1) + " of " + std::to_string(steps));
    }
  }
  Eigen::VectorXcd psi(dim);
  psi.real() = re;
  psi.imag() = im;

  const Eigen::MatrixXcd generator =
      Eigen::MatrixXcd(gen.matrix.cast<std::complex<double>>()) * std::complex<double>(0.0, -alpha);
  const Eigen::MatrixXcd propagator = generator.exp();
  const Eigen::VectorXcd psi_exp = propagator * psi0;

  OracleResult result;
  result.integrated = from_dense(psi, initial.q, initial.n_max());
  result.exponential = from_dense(psi_exp, initial.q, initial.n_max());
  result.path_difference = (psi - psi_exp).norm();
  if (result.path_difference > kOraclePathAgreement) {
    throw NumericalGuardError("evolve_oracle: integrator and matrix exponential differ by " +
                              sci(result.path_difference));
  }
  return result;
}

}  // namespace paircat::dynamics
