#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "paircat/dynamics.hpp"
#include "paircat/errors.hpp"
#include "paircat/fockspace.hpp"
#include "paircat/observables.hpp"
#include "paircat/quadrature.hpp"

namespace paircat {

enum class Output { inversion, entropies, quadrature };

struct TimeAxis {
  /// End of the sampled window in scaled time lambda*t.
  double t_max = 30.0;
  int samples = 3001;
};

/// Single-parameter sweep: xi | q | phi | varpi.
struct Sweep {
  std::string parameter;
  std::vector<double> values;
};

/// Parameters carried for provenance only; none of them changes scaled-time output.
struct PhysicsMetadata {
  std::optional<double> eta;
  std::optional<double> omega_0;
  std::optional<double> omega_1;
  std::optional<double> omega_2;
};

struct ExperimentConfig {
  std::string name;
  PairCatSpec state;
  /// q exactly as written; negative values are folded into state.q by swapping modes.
  int q_requested = 0;
  InternalState initial_internal = InternalState::excited;
  CouplingProfile profile = ConstantCoupling{};
  TimeAxis time;
  std::set<Output> outputs{Output::inversion, Output::entropies};
  std::optional<GridSpec> grid;
  std::optional<Sweep> sweep;
  LogBase log_base = LogBase::natural;
  InversionSign sign = InversionSign::excited_minus_ground;
  PhysicsMetadata physics;

  bool modes_relabeled() const { return q_requested < 0; }
  bool wants_series() const;
  bool wants_raster() const { return outputs.count(Output::quadrature) > 0; }
};

/// Every problem found in a config file, each prefixed with its line number
/// where one applies.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Parses the INI-style format: [section] headers, `key = value` lines and `#`
/// comments. Real values accept multiples and fractions of pi (`pi/2`, `3*pi/4`).
ExperimentConfig load_config(std::string_view text);

/// Canonical text that load_config parses back to an identical config.
std::string to_config_text(const ExperimentConfig& config);

/// Copy of `config` with the sweep removed and `parameter` set to `value`.
ExperimentConfig apply_sweep_value(const ExperimentConfig& config, const std::string& parameter,
                                   double value);

/// Parses a real with optional pi factors. Throws ValidationError.
double parse_real(std::string_view text);

}  // namespace paircat
