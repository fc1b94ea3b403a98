#include "paircat/dynamics.hpp"

#include <cmath>
#include <string>

#include "paircat/errors.hpp"

namespace paircat {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double JointState::norm() const {
  double sum = std::norm(g_floor);
  for (const auto& a : e_amp) sum += std::norm(a);
  for (const auto& a : g_amp) sum += std::norm(a);
  return std::sqrt(sum);
}

void JointState::validate() const {
  if (q < 0) throw ValidationError("joint state: q must be non-negative");
  if (e_amp.empty() || e_amp.size() != g_amp.size()) {
    throw ValidationError("joint state: excited and ground block vectors must match in size");
  }
  if (!has_ground_member(0) && g_amp[0] != complex(0.0)) {
    throw ValidationError("joint state: amplitude on the nonexistent state |g, 1, -1>");
  }
  if (!has_floor() && g_floor != complex(0.0)) {
    throw ValidationError("joint state: floor amplitude requires q >= 2");
  }
}

namespace dynamics {

void validate(const CouplingProfile& profile) {
  std::visit(Overloaded{
                 [](const ConstantCoupling& c) {
                   if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) {
                     throw ValidationError("constant coupling: lambda must be positive");
                   }
                 },
                 [](const SinhCoupling& c) {
                   if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) {
                     throw ValidationError("sinh coupling: lambda must be positive");
                   }
                   if (!(c.varpi > 0.0) || !std::isfinite(c.varpi)) {
                     throw ValidationError("sinh coupling: varpi must be positive");
                   }
                 },
                 [](const PiecewiseCoupling& c) {
                   if (c.knots.size() < 2) {
                     throw ValidationError("piecewise coupling: at least two knots required");
                   }
                   for (std::size_t k = 0; k < c.knots.size(); ++k) {
                     if (!std::isfinite(c.knots[k].first) || !std::isfinite(c.knots[k].second)) {
                       throw ValidationError("piecewise coupling: knots must be finite");
                     }
                     if (k > 0 && !(c.knots[k].first > c.knots[k - 1].first)) {
                       throw ValidationError(
                           "piecewise coupling: knot times must be strictly increasing");
                     }
                   }
                 },
             },
             profile);
}

double coupling_at(const CouplingProfile& profile, double t) {
  return std::visit(
      Overloaded{
          [](const ConstantCoupling& c) { return c.lambda; },
          [t](const SinhCoupling& c) { return c.lambda * std::sinh(c.varpi * t); },
          [t](const PiecewiseCoupling& c) {
            if (t < c.knots.front().first) return 0.0;
            if (t > c.knots.back().first) {
              throw OutOfRangeError("piecewise coupling: t = " + std::to_string(t) +
                                    " beyond the last knot");
            }
            for (std::size_t k = 1; k < c.knots.size(); ++k) {
              const auto [t0, v0] = c.knots[k - 1];
              const auto [t1, v1] = c.knots[k];
              if (t <= t1) return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
            }
            return c.knots.back().second;
          },
      },
      profile);
}

double pulse_area(const CouplingProfile& profile, double t) {
  if (!(t >= 0.0)) throw ValidationError("pulse_area: t must be non-negative");
  return std::visit(
      Overloaded{
          [t](const ConstantCoupling& c) { return c.lambda * t; },
          [t](const SinhCoupling& c) {
            // cosh(x) - 1 = 2 sinh^2(x/2), exact near x = 0
            const double s = std::sinh(0.5 * c.varpi * t);
            return c.lambda * 2.0 * s * s / c.varpi;
          },
          [t](const PiecewiseCoupling& c) {
            if (t > c.knots.back().first) {
              throw OutOfRangeError("piecewise coupling: t = " + std::to_string(t) +
                                    " beyond the last knot");
            }
            double area = 0.0;
            for (std::size_t k = 1; k < c.knots.size(); ++k) {
              const auto [t0, v0] = c.knots[k - 1];
              const auto [t1, v1] = c.knots[k];
              if (t <= t0) break;
              const double end = std::min(t, t1);
              const double v_end = v0 + (v1 - v0) * (end - t0) / (t1 - t0);
              area += 0.5 * (v0 + v_end) * (end - t0);
            }
            return area;
          },
      },
      profile);
}

JointState make_joint_state(const LadderState& vibrational, InternalState internal) {
  if (vibrational.coeffs.empty()) throw ValidationError("make_joint_state: empty ladder state");
  const std::size_t size = vibrational.coeffs.size();
  JointState state;
  if (internal == InternalState::excited) {
    state.q = vibrational.q;
    state.e_amp = vibrational.coeffs;
    state.g_amp.assign(size, complex(0.0));
    return state;
  }
  // |g, m, m+q> = ground member of block n = m-1 with charge q+2; m = 0 is the floor.
  state.q = vibrational.q + 2;
  state.e_amp.assign(size, complex(0.0));
  state.g_amp.assign(size, complex(0.0));
  state.g_floor = vibrational.coeffs[0];
  for (std::size_t m = 1; m < size; ++m) state.g_amp[m - 1] = vibrational.coeffs[m];
  return state;
}

std::vector<Component> components(const JointState& state) {
  std::vector<Component> out;
  out.reserve(2 * state.e_amp.size() + 1);
  const int n_max = state.n_max();
  for (int n = 0; n <= n_max; ++n) out.push_back({true, n, n + state.q, state.e_amp[n]});
  for (int n = 0; n <= n_max; ++n) {
    if (state.has_ground_member(n)) out.push_back({false, n + 1, n + state.q - 1, state.g_amp[n]});
  }
  if (state.has_floor()) out.push_back({false, 0, state.q - 2, state.g_floor});
  return out;
}

double block_frequency(int q, int n) {
  return std::sqrt((n + 1.0) * static_cast<double>(n + q));
}

JointState evolve_by_area(const JointState& initial, double alpha) {
  initial.validate();
  JointState out = initial;
  const complex minus_i(0.0, -1.0);
  for (int n = 0; n <= initial.n_max(); ++n) {
    if (!initial.has_ground_member(n)) continue;  // stationary |e, 0, 0>
    const double theta = alpha * block_frequency(initial.q, n);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const complex e = initial.e_amp[n];
    const complex g = initial.g_amp[n];
    out.e_amp[n] = c * e + minus_i * s * g;
    out.g_amp[n] = minus_i * s * e + c * g;
  }
  return out;
}

JointState evolve_analytic(const JointState& initial, const CouplingProfile& profile, double t) {
  validate(profile);
  return evolve_by_area(initial, pulse_area(profile, t));
}

ConservedQuantities conserved_quantities(const JointState& state) {
  ConservedQuantities result;
  for (const auto& c : components(state)) {
    const double p = std::norm(c.amplitude);
    if (p > 0.0) result.total_quanta[c.n1 + c.n2] += p;
  }
  const int n_max = state.n_max();
  const auto all = components(state);
  // Block n pairs the excited entry n with the ground entry of the same n.
  for (int n = 0; n <= n_max; ++n) {
    if (!state.has_ground_member(n)) continue;
    const Component& e = all[n];
    const int ground_index = n_max + 1 + n - (state.has_ground_member(0) ? 0 : 1);
    const Component& g = all[ground_index];
    if ((e.n2 - 1) != g.n2 || e.n1 + e.n2 != g.n1 + g.n2) result.charge_consistent = false;
  }
  return result;
}

}  // namespace dynamics
}  // namespace paircat
