// paircat: pair cat state quadratures, ion-motion dynamics and entanglement.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "paircat/config.hpp"
#include "paircat/presets.hpp"
#include "paircat/runner.hpp"
#include "paircat/selftest.hpp"

namespace {

using namespace paircat;

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  writer(out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string preset_text(const std::string& name) {
  const auto preset = find_preset(name);
  if (!preset) {
    std::string known;
    for (const auto& p : presets()) known += std::string(known.empty() ? "" : ", ") + std::string(p.name);
    throw ValidationError("unknown preset '" + name + "' (known: " + known + ")");
  }
  return std::string(preset->text);
}

// "min:max:n" applied to both axes.
GridSpec parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw ValidationError("--grid expects min:max:n, got '" + text + "'");
  }
  GridSpec g;
  g.x_min = g.y_min = parse_real(text.substr(0, first));
  g.x_max = g.y_max = parse_real(text.substr(first + 1, second - first - 1));
  const double n = parse_real(text.substr(second + 1));
  if (n != static_cast<int>(n)) throw ValidationError("--grid node count must be an integer");
  g.nx = g.ny = static_cast<int>(n);
  g.validate();
  return g;
}

// s.csv + ("xi", 20) -> s.xi-20.csv
std::string point_path(const std::string& path, const std::string& parameter, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", value);
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / p.stem();
  out += "." + parameter + "-" + buf + p.extension().string();
  return out.string();
}

struct QuadArgs {
  std::string preset, config, out, format, grid;
  double xi = 0.0, xi_imag = 0.0, phi = 0.0, tail_epsilon = 0.0;
  int q = 0;
  bool print_config = false;
};

struct EvolveArgs {
  std::string preset, config, manifest_in, out, manifest, json, log_base;
  bool print_config = false;
};

int cmd_quad(const QuadArgs& a, CLI::App& sub, int threads) {
  const bool from_flags = sub.count("--xi") || sub.count("--q") || sub.count("--phi");
  const int sources = !a.preset.empty() + !a.config.empty() + from_flags;
  if (sources != 1) {
    std::cerr << "quad: give exactly one of --preset, --config or --xi/--q/--phi\n\n" << sub.help();
    return kValidation;
  }
  std::string text;
  if (!a.preset.empty()) text = preset_text(a.preset);
  if (!a.config.empty()) text = read_file(a.config);
  ExperimentConfig cfg;
  if (from_flags) {
    if (!sub.count("--xi") || !sub.count("--q") || !sub.count("--phi")) {
      std::cerr << "quad: --xi, --q and --phi are all required\n\n" << sub.help();
      return kValidation;
    }
    cfg.outputs = {Output::quadrature};
    cfg.state.xi = {a.xi, a.xi_imag};
    cfg.q_requested = a.q;
    cfg.state.q = std::abs(a.q);
    cfg.state.phi = a.phi;
    cfg.grid = GridSpec{};
  } else {
    cfg = load_config(text);
    cfg.outputs = {Output::quadrature};
  }
  if (sub.count("--tail-epsilon")) cfg.state.tail_epsilon = a.tail_epsilon;
  if (!a.grid.empty()) cfg.grid = parse_grid(a.grid);

  if (a.print_config) {
    std::cout << (!a.preset.empty() && a.grid.empty() && !sub.count("--tail-epsilon") ? text : to_config_text(cfg));
    return kOk;
  }
  if (a.out.empty()) {
    std::cerr << "quad: --out is required\n\n" << sub.help();
    return kValidation;
  }
  std::string format = a.format;
  if (format.empty()) format = std::filesystem::path(a.out).extension() == ".csv" ? "csv" : "matrix";

  int status = kOk;
  for (const auto& point : runner::sweep(cfg, threads)) {
    if (!point.error.empty()) {
      std::cerr << "error: " << point.error << "\n";
      status = std::max(status, point.error_code);
      continue;
    }
    const auto& run = *point.output;
    const std::string path = cfg.sweep ? point_path(a.out, cfg.sweep->parameter, point.value) : a.out;
    write_file(path, [&](std::ostream& os) {
      if (format == "csv") quadrature::write_csv(os, *run.raster);
      else quadrature::write_matrix(os, *run.raster, runner::state_label(run.config));
    });
    std::cerr << "wrote " << path << " (norm estimate " << run.raster->norm_estimate << ", N_max "
              << run.manifest.n_max << ")\n";
  }
  return status;
}

int cmd_evolve(const EvolveArgs& a, CLI::App& sub, int threads) {
  const int sources = !a.preset.empty() + !a.config.empty() + !a.manifest_in.empty();
  if (sources != 1) {
    std::cerr << "evolve: give exactly one of --preset, --config or --manifest-in\n\n" << sub.help();
    return kValidation;
  }
  std::string text;
  if (!a.preset.empty()) text = preset_text(a.preset);
  if (!a.config.empty()) text = read_file(a.config);
  ExperimentConfig cfg;
  if (!a.manifest_in.empty()) {
    nlohmann::json manifest;
    try {
      manifest = nlohmann::json::parse(read_file(a.manifest_in));
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("manifest '" + a.manifest_in + "': " + e.what());
    }
    cfg = runner::config_from_manifest(manifest);
    text = to_config_text(cfg);
  } else {
    cfg = load_config(text);
  }
  if (!a.log_base.empty()) {
    if (a.log_base == "natural") cfg.log_base = LogBase::natural;
    else if (a.log_base == "two") cfg.log_base = LogBase::two;
    else throw ValidationError("--log-base must be natural or two");
  }
  if (a.print_config) {
    std::cout << (a.log_base.empty() ? text : to_config_text(cfg));
    return kOk;
  }
  if (a.out.empty()) {
    std::cerr << "evolve: --out is required\n\n" << sub.help();
    return kValidation;
  }
  if (!cfg.wants_series()) {
    throw ValidationError("evolve: config requests no inversion or entropy output");
  }
  cfg.outputs.erase(Output::quadrature);

  int status = kOk;
  for (const auto& point : runner::sweep(cfg, threads)) {
    if (!point.error.empty()) {
      std::cerr << "error: " << point.error << "\n";
      status = std::max(status, point.error_code);
      continue;
    }
    const auto& run = *point.output;
    const auto suffix = [&](const std::string& path) {
      return cfg.sweep ? point_path(path, cfg.sweep->parameter, point.value) : path;
    };
    write_file(suffix(a.out), [&](std::ostream& os) { runner::write_series_csv(os, *run.series); });
    if (!a.manifest.empty()) {
      write_file(suffix(a.manifest),
                 [&](std::ostream& os) { os << runner::manifest_json(run.manifest).dump(2) << "\n"; });
    }
    if (!a.json.empty()) {
      write_file(suffix(a.json), [&](std::ostream& os) {
        os << runner::series_json(*run.series, run.manifest).dump(2) << "\n";
      });
    }
    std::cerr << "wrote " << suffix(a.out) << " (" << run.series->size() << " samples, N_max "
              << run.manifest.n_max << ")\n";
  }
  return status;
}

int cmd_selftest(bool quick, bool list) {
  const auto& all = selftest::checks();
  if (list) {
    for (const auto& c : all) std::cout << c.name << "  " << c.description << "\n";
    return kOk;
  }
  bool ok = true;
  for (const auto& c : all) {
    selftest::Outcome outcome;
    try {
      outcome = c.run(quick);
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    ok = ok && outcome.passed;
    std::printf("%-4s %-32s %s\n", outcome.passed ? "PASS" : "FAIL", c.name.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair cat states of a trapped ion: quadrature distributions, inversion and entanglement"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Maximum worker threads")->check(CLI::PositiveNumber);

  QuadArgs qa;
  auto* quad = app.add_subcommand("quad", "Rasterize the quadrature distribution P(x,y)");
  quad->add_option("--preset", qa.preset, "Figure preset (fig1a..fig3c, fig2-q-sweep)");
  quad->add_option("--config", qa.config, "Config file");
  quad->add_option("--xi", qa.xi, "Pair amplitude (real part)");
  quad->add_option("--xi-imag", qa.xi_imag, "Pair amplitude (imaginary part)");
  quad->add_option("--q", qa.q,
                   "Charge q; a negative value is folded to |q| by swapping the two mode labels");
  quad->add_option("--phi", qa.phi, "Relative cat phase in radians");
  quad->add_option("--tail-epsilon", qa.tail_epsilon, "Discarded-probability budget");
  quad->add_option("--grid", qa.grid, "min:max:n on both axes");
  quad->add_option("--out", qa.out, "Output path");
  quad->add_option("--format", qa.format, "matrix or csv (default from the --out extension)")
      ->check(CLI::IsMember({"matrix", "csv"}));
  quad->add_flag("--print-config", qa.print_config, "Print the effective config and exit");
  quad->add_option("--threads", threads, "Maximum worker threads")->check(CLI::PositiveNumber);

  EvolveArgs ea;
  auto* evolve = app.add_subcommand("evolve", "Time series of inversion and entropies");
  evolve->add_option("--preset", ea.preset,
                     "fig4-text | fig4-caption | fig4b-text | fig4b-caption | fig5a | fig5b | "
                     "fig6a | fig6b | fig7 | fig5-xi-sweep");
  evolve->add_option("--config", ea.config,
                     "Config file (negative q is folded to |q| by swapping the two mode labels)");
  evolve->add_option("--manifest-in", ea.manifest_in, "Re-run the config recorded in a manifest");
  evolve->add_option("--out", ea.out, "Time series CSV path");
  evolve->add_option("--manifest", ea.manifest, "Run manifest JSON path");
  evolve->add_option("--json", ea.json, "Time series + manifest JSON path");
  evolve->add_option("--log-base", ea.log_base, "natural or two");
  evolve->add_flag("--print-config", ea.print_config, "Print the config and exit");
  evolve->add_option("--threads", threads, "Maximum worker threads")->check(CLI::PositiveNumber);

  bool quick = false;
  bool list = false;
  auto* self = app.add_subcommand("selftest", "Run the invariant suite");
  self->add_flag("--quick", quick, "Reduced parameter grid");
  self->add_flag("--list", list, "List checks without running them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*quad) return cmd_quad(qa, *quad, threads);
    if (*evolve) return cmd_evolve(ea, *evolve, threads);
    return cmd_selftest(quick, list);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kNumerical;
  }
}
