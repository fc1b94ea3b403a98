#include "paircat/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

namespace paircat {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_plain_number(const std::string& token) {
  if (token == "pi") return std::numbers::pi;
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ValidationError("not a number: '" + token + "'");
  }
  return value;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"run", {"name", "outputs"}},
      {"state", {"xi", "xi_imag", "q", "phi", "tail_epsilon", "truncation_cap"}},
      {"initial", {"internal"}},
      {"coupling", {"profile", "lambda", "varpi", "knots"}},
      {"physics", {"eta", "omega_0", "omega_1", "omega_2"}},
      {"time", {"t_max", "samples"}},
      {"observables", {"log_base", "sign_convention"}},
      {"grid", {"x_min", "x_max", "y_min", "y_max", "nx", "ny"}},
      {"sweep", {"parameter", "values"}},
  };
  return keys;
}

struct Entry {
  std::string value;
  int line = 0;
};

// Collects conversion problems instead of stopping at the first one.
class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  std::optional<std::string> text(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
  }

  std::optional<double> real(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    try {
      return parse_real(it->second.value);
    } catch (const ValidationError& e) {
      fail(key, e.what());
      return std::nullopt;
    }
  }

  std::optional<int> integer(const std::string& key) {
    const auto v = real(key);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
      fail(key, "must be an integer, got '" + entries_.at(key).value + "'");
      return std::nullopt;
    }
    return static_cast<int>(*v);
  }

  void fail(const std::string& key, const std::string& message) {
    const auto it = entries_.find(key);
    const std::string where = it != entries_.end() ? "line " + std::to_string(it->second.line) + ": " : "";
    problems.push_back(where + key + ": " + message);
  }

  void require(const std::string& key) {
    if (!has(key)) problems.push_back(key + ": required key missing");
  }

  std::vector<std::string> problems;

 private:
  std::map<std::string, Entry> entries_;
};

std::string profile_name(const CouplingProfile& profile) {
  if (std::holds_alternative<ConstantCoupling>(profile)) return "constant";
  if (std::holds_alternative<SinhCoupling>(profile)) return "sinh";
  return "piecewise";
}

std::string output_name(Output o) {
  switch (o) {
    case Output::inversion: return "inversion";
    case Output::entropies: return "entropies";
    case Output::quadrature: return "quadrature";
  }
  return {};
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : ValidationError([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

bool ExperimentConfig::wants_series() const {
  return outputs.count(Output::inversion) > 0 || outputs.count(Output::entropies) > 0;
}

double parse_real(std::string_view raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ' && c != '\t') text += c;
  }
  if (text.empty()) throw ValidationError("empty value");
  double sign = 1.0;
  if (text.front() == '-' && text.find_first_of("*/") != std::string::npos) {
    sign = -1.0;
    text.erase(0, 1);
  }
  // Product/quotient chain of numbers and `pi`, evaluated left to right.
  double value = 0.0;
  std::size_t pos = 0;
  char op = '*';
  bool first = true;
  while (pos <= text.size()) {
    const auto next = text.find_first_of("*/", pos);
    const std::string token = text.substr(pos, next == std::string::npos ? next : next - pos);
    const double term = parse_plain_number(token);
    if (first) {
      value = term;
      first = false;
    } else if (op == '*') {
      value *= term;
    } else {
      if (term == 0.0) throw ValidationError("division by zero in '" + std::string(raw) + "'");
      value /= term;
    }
    if (next == std::string::npos) break;
    op = text[next];
    pos = next + 1;
  }
  if (!std::isfinite(value)) throw ValidationError("value is not finite: '" + std::string(raw) + "'");
  return sign * value;
}

ExperimentConfig load_config(std::string_view text) {
  std::vector<std::string> problems;
  std::map<std::string, Entry> entries;
  std::set<std::string> sections_seen;
  std::string section;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        problems.push_back(where + "malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section)) {
        problems.push_back(where + "unknown section [" + section + "]");
      }
      sections_seen.insert(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back(where + "expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      problems.push_back(where + "assignment to '" + key + "' outside any section");
      continue;
    }
    const auto known = schema().find(section);
    if (known == schema().end()) continue;  // already reported
    if (!known->second.count(key)) {
      problems.push_back(where + "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    if (value.empty()) {
      problems.push_back(where + section + "." + key + ": empty value");
      continue;
    }
    const std::string full = section + "." + key;
    if (entries.count(full)) {
      problems.push_back(where + "duplicate key " + full + " (first set on line " +
                         std::to_string(entries[full].line) + ")");
      continue;
    }
    entries[full] = {value, line_no};
  }

  Reader r(std::move(entries));
  ExperimentConfig cfg;

  if (auto v = r.text("run.name")) cfg.name = *v;
  if (auto v = r.text("run.outputs")) {
    cfg.outputs.clear();
    for (const auto& item : split(*v, ',')) {
      if (item == "inversion") cfg.outputs.insert(Output::inversion);
      else if (item == "entropies") cfg.outputs.insert(Output::entropies);
      else if (item == "quadrature") cfg.outputs.insert(Output::quadrature);
      else r.fail("run.outputs", "unknown output '" + item + "' (inversion, entropies, quadrature)");
    }
  }

  r.require("state.xi");
  r.require("state.q");
  r.require("state.phi");
  const double xi_re = r.real("state.xi").value_or(0.0);
  const double xi_im = r.real("state.xi_imag").value_or(0.0);
  cfg.state.xi = {xi_re, xi_im};
  if (auto q = r.integer("state.q")) {
    cfg.q_requested = *q;
    cfg.state.q = std::abs(*q);
  }
  cfg.state.phi = r.real("state.phi").value_or(0.0);
  if (auto eps = r.real("state.tail_epsilon")) {
    if (!(*eps > 0.0 && *eps <= 1e-6)) r.fail("state.tail_epsilon", "must lie in (0, 1e-6]");
    cfg.state.tail_epsilon = *eps;
  }
  if (auto cap = r.integer("state.truncation_cap")) {
    if (*cap < kTruncationFloor) {
      r.fail("state.truncation_cap", "must be >= " + std::to_string(kTruncationFloor));
    }
    cfg.state.truncation_cap = *cap;
  }

  if (auto v = r.text("initial.internal")) {
    if (*v == "excited") cfg.initial_internal = InternalState::excited;
    else if (*v == "ground") cfg.initial_internal = InternalState::ground;
    else r.fail("initial.internal", "must be 'excited' or 'ground'");
  }

  const std::string profile = r.text("coupling.profile").value_or("constant");
  const auto lambda = r.real("coupling.lambda");
  const auto varpi = r.real("coupling.varpi");
  if (lambda && !(*lambda > 0.0)) r.fail("coupling.lambda", "must be positive");
  if (varpi && !(*varpi > 0.0)) r.fail("coupling.varpi", "must be positive");
  if (profile == "constant") {
    cfg.profile = ConstantCoupling{lambda.value_or(1.0)};
  } else if (profile == "sinh") {
    cfg.profile = SinhCoupling{lambda.value_or(1.0), varpi.value_or(0.5)};
  } else if (profile == "piecewise") {
    PiecewiseCoupling pw;
    if (auto knots = r.text("coupling.knots")) {
      for (const auto& knot : split(*knots, ',')) {
        const auto parts = split(knot, ':');
        try {
          if (parts.size() != 2) throw ValidationError("expected t:value, got '" + knot + "'");
          pw.knots.emplace_back(parse_real(parts[0]), parse_real(parts[1]));
        } catch (const ValidationError& e) {
          r.fail("coupling.knots", e.what());
        }
      }
      try {
        dynamics::validate(pw);
      } catch (const ValidationError& e) {
        r.fail("coupling.knots", e.what());
      }
    } else {
      r.fail("coupling.knots", "required for the piecewise profile");
    }
    if (lambda) r.fail("coupling.lambda", "not used by the piecewise profile");
    cfg.profile = pw;
  } else {
    r.fail("coupling.profile", "must be constant, sinh or piecewise, got '" + profile + "'");
  }
  if (profile != "sinh" && r.has("coupling.varpi")) {
    r.fail("coupling.varpi", "only valid for the sinh profile");
  }
  if (profile != "piecewise" && r.has("coupling.knots")) {
    r.fail("coupling.knots", "only valid for the piecewise profile");
  }

  cfg.physics.eta = r.real("physics.eta");
  cfg.physics.omega_0 = r.real("physics.omega_0");
  cfg.physics.omega_1 = r.real("physics.omega_1");
  cfg.physics.omega_2 = r.real("physics.omega_2");

  if (auto t = r.real("time.t_max")) {
    if (!(*t > 0.0)) r.fail("time.t_max", "must be positive");
    cfg.time.t_max = *t;
  }
  if (auto s = r.integer("time.samples")) {
    if (*s < 2) r.fail("time.samples", "must be >= 2, got " + std::to_string(*s));
    cfg.time.samples = *s;
  }
  if (const auto* pw = std::get_if<PiecewiseCoupling>(&cfg.profile);
      pw && !pw->knots.empty() && cfg.time.t_max > pw->knots.back().first) {
    r.fail("time.t_max", "extends beyond the last piecewise knot");
  }

  if (auto v = r.text("observables.log_base")) {
    if (*v == "natural") cfg.log_base = LogBase::natural;
    else if (*v == "two") cfg.log_base = LogBase::two;
    else r.fail("observables.log_base", "must be 'natural' or 'two'");
  }
  if (auto v = r.text("observables.sign_convention")) {
    if (*v == "excited_minus_ground") cfg.sign = InversionSign::excited_minus_ground;
    else if (*v == "ground_minus_excited") cfg.sign = InversionSign::ground_minus_excited;
    else r.fail("observables.sign_convention", "must be excited_minus_ground or ground_minus_excited");
  }

  if (sections_seen.count("grid")) {
    GridSpec g;
    g.x_min = r.real("grid.x_min").value_or(g.x_min);
    g.x_max = r.real("grid.x_max").value_or(g.x_max);
    g.y_min = r.real("grid.y_min").value_or(g.y_min);
    g.y_max = r.real("grid.y_max").value_or(g.y_max);
    g.nx = r.integer("grid.nx").value_or(g.nx);
    g.ny = r.integer("grid.ny").value_or(g.ny);
    try {
      g.validate();
    } catch (const ValidationError& e) {
      r.problems.push_back(std::string("grid: ") + e.what());
    }
    cfg.grid = g;
  }

  if (sections_seen.count("sweep")) {
    Sweep sweep;
    r.require("sweep.parameter");
    r.require("sweep.values");
    sweep.parameter = r.text("sweep.parameter").value_or("");
    static const std::set<std::string> allowed{"xi", "q", "phi", "varpi"};
    if (r.has("sweep.parameter") && !allowed.count(sweep.parameter)) {
      r.fail("sweep.parameter", "must be one of xi, q, phi, varpi");
    }
    if (auto v = r.text("sweep.values")) {
      for (const auto& item : split(*v, ',')) {
        try {
          sweep.values.push_back(parse_real(item));
        } catch (const ValidationError& e) {
          r.fail("sweep.values", e.what());
        }
      }
    }
    if (r.has("sweep.values") && sweep.values.empty()) r.fail("sweep.values", "must not be empty");
    if (sweep.parameter == "q") {
      for (double v : sweep.values) {
        if (v != std::floor(v)) r.fail("sweep.values", "q values must be integers");
      }
    }
    if (sweep.parameter == "varpi" && !std::holds_alternative<SinhCoupling>(cfg.profile)) {
      r.fail("sweep.parameter", "varpi sweeps require the sinh profile");
    }
    cfg.sweep = sweep;
  }

  if (!r.problems.empty() || !problems.empty()) {
    problems.insert(problems.end(), r.problems.begin(), r.problems.end());
    throw ConfigError(std::move(problems));
  }
  return cfg;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[run]\n";
  if (!cfg.name.empty()) out << "name = " << cfg.name << "\n";
  out << "outputs = ";
  bool first = true;
  for (Output o : cfg.outputs) {
    out << (first ? "" : ", ") << output_name(o);
    first = false;
  }
  out << "\n\n[state]\n";
  out << "xi = " << fmt17(cfg.state.xi.real()) << "\n";
  out << "xi_imag = " << fmt17(cfg.state.xi.imag()) << "\n";
  out << "q = " << cfg.q_requested << "\n";
  out << "phi = " << fmt17(cfg.state.phi) << "\n";
  out << "tail_epsilon = " << fmt17(cfg.state.tail_epsilon) << "\n";
  out << "truncation_cap = " << cfg.state.truncation_cap << "\n";
  out << "\n[initial]\ninternal = "
      << (cfg.initial_internal == InternalState::excited ? "excited" : "ground") << "\n";
  out << "\n[coupling]\nprofile = " << profile_name(cfg.profile) << "\n";
  if (const auto* c = std::get_if<ConstantCoupling>(&cfg.profile)) {
    out << "lambda = " << fmt17(c->lambda) << "\n";
  } else if (const auto* s = std::get_if<SinhCoupling>(&cfg.profile)) {
    out << "lambda = " << fmt17(s->lambda) << "\nvarpi = " << fmt17(s->varpi) << "\n";
  } else {
    const auto& pw = std::get<PiecewiseCoupling>(cfg.profile);
    out << "knots = ";
    for (std::size_t k = 0; k < pw.knots.size(); ++k) {
      out << (k ? ", " : "") << fmt17(pw.knots[k].first) << ":" << fmt17(pw.knots[k].second);
    }
    out << "\n";
  }
  const auto& ph = cfg.physics;
  if (ph.eta || ph.omega_0 || ph.omega_1 || ph.omega_2) {
    out << "\n[physics]\n";
    if (ph.eta) out << "eta = " << fmt17(*ph.eta) << "\n";
    if (ph.omega_0) out << "omega_0 = " << fmt17(*ph.omega_0) << "\n";
    if (ph.omega_1) out << "omega_1 = " << fmt17(*ph.omega_1) << "\n";
    if (ph.omega_2) out << "omega_2 = " << fmt17(*ph.omega_2) << "\n";
  }
  out << "\n[time]\nt_max = " << fmt17(cfg.time.t_max) << "\nsamples = " << cfg.time.samples
      << "\n";
  out << "\n[observables]\nlog_base = " << (cfg.log_base == LogBase::natural ? "natural" : "two")
      << "\nsign_convention = "
      << (cfg.sign == InversionSign::excited_minus_ground ? "excited_minus_ground"
                                                          : "ground_minus_excited")
      << "\n";
  if (cfg.grid) {
    const auto& g = *cfg.grid;
    out << "\n[grid]\nx_min = " << fmt17(g.x_min) << "\nx_max = " << fmt17(g.x_max)
        << "\ny_min = " << fmt17(g.y_min) << "\ny_max = " << fmt17(g.y_max) << "\nnx = " << g.nx
        << "\nny = " << g.ny << "\n";
  }
  if (cfg.sweep) {
    out << "\n[sweep]\nparameter = " << cfg.sweep->parameter << "\nvalues = ";
    for (std::size_t k = 0; k < cfg.sweep->values.size(); ++k) {
      out << (k ? ", " : "") << fmt17(cfg.sweep->values[k]);
    }
    out << "\n";
  }
  return out.str();
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& config, const std::string& parameter,
                                   double value) {
  ExperimentConfig point = config;
  point.sweep.reset();
  if (parameter == "xi") {
    point.state.xi = {value, config.state.xi.imag()};
  } else if (parameter == "q") {
    point.q_requested = static_cast<int>(value);
    point.state.q = std::abs(point.q_requested);
  } else if (parameter == "phi") {
    point.state.phi = value;
  } else if (parameter == "varpi") {
    auto* s = std::get_if<SinhCoupling>(&point.profile);
    if (!s) throw ValidationError("sweep: varpi requires the sinh profile");
    if (!(value > 0.0)) throw ValidationError("sweep: varpi must be positive");
    s->varpi = value;
  } else {
    throw ValidationError("sweep: unknown parameter '" + parameter + "'");
  }
  return point;
}

}  // namespace paircat
