#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "udw/cli/cli.hpp"
#include "udw/errors.hpp"

namespace udw::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_values(const std::string& value) {
  std::string spaced = value;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  return tokens;
}

const std::set<std::string> kFlagKeys = {"pointlike", "no-timing"};

bool truthy(const std::string& v) {
  return v == "true" || v == "1" || v == "yes" || v == "on" || v.empty();
}

// Command-line tokens followed by config-file entries the command line did not
// already set.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot read config file " + config_path);
  std::stringstream text;
  text << in.rdbuf();

  std::set<std::string> given;
  for (const std::string& a : args) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));
  }
  std::vector<std::string> merged = args;
  for (const auto& [key, value] : parse_config_file(text.str())) {
    if (key == "config" || given.count(key) != 0) continue;
    if (kFlagKeys.count(key) != 0) {
      if (truthy(value)) merged.push_back("--" + key);
      continue;
    }
    merged.push_back("--" + key);
    for (const std::string& t : split_values(value)) merged.push_back(t);
  }
  return merged;
}

OutputFormat parse_format(const std::string& s) {
  return s == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

violation::EvaluationPath parse_path_or_throw(const std::string& s) {
  const auto p = violation::parse_path(s);
  if (!p || *p == violation::EvaluationPath::PointlikeAnalytic) {
    throw std::invalid_argument("unknown --path " + s);
  }
  return *p;
}

struct Common {
  std::string path;
  std::uint64_t mc_samples = 10'000'000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string format = "csv";
  std::string out_file;
  std::string config_file;
  bool no_timing = false;
  numerics::QuadratureSpec quad;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_path) {
  c.path = default_path;
  cmd->add_option("--path", c.path, "Evaluation path")
      ->check(CLI::IsMember({"mc", "reduced3d", "ei2d", "dimensionless"}))
      ->capture_default_str();
  cmd->add_option("--mc-samples", c.mc_samples, "Monte-Carlo samples")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Monte-Carlo seed")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out_file, "Write output to FILE instead of stdout");
  cmd->add_option("--config", c.config_file,
                  "Flat key = value file mirroring the flags; flags take precedence");
  cmd->add_flag("--no-timing", c.no_timing,
                "Write 0 in the seconds column so output is byte-reproducible");
  cmd->add_option("--abs-tol", c.quad.abs_tol, "Quadrature absolute tolerance")
      ->capture_default_str();
  cmd->add_option("--rel-tol", c.quad.rel_tol, "Quadrature relative tolerance")
      ->capture_default_str();
  cmd->add_option("--max-subdivisions", c.quad.max_subdivisions,
                  "Quadrature subdivision limit")
      ->capture_default_str();
}

void emit(const Common& c, std::span<const ResultRow> rows, std::ostream& out) {
  if (c.out_file.empty()) {
    write_rows(out, rows, parse_format(c.format));
    return;
  }
  std::ofstream file(c.out_file, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write " + c.out_file);
  write_rows(file, rows, parse_format(c.format));
}

}  // namespace

std::map<std::string, std::string> parse_config_file(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + " has no key");
    }
    entries[key] = eq == std::string::npos ? std::string{} : trim(line.substr(eq + 1));
  }
  return entries;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Covariance violation of smeared Unruh-DeWitt detectors"};
  app.name(argc > 0 ? argv[0] : "udwcov");
  app.require_subcommand(1);

  Common eval_common;
  double e_v = 0.0;
  std::optional<double> e_ratio, e_omega_t, e_omega, e_t_switch, e_ell;
  bool e_pointlike = false;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate Tr(rho_phi E) at one parameter point");
  eval->add_option("--v", e_v, "Detector speed relative to the lab")->required();
  eval->add_option("--t-over-ell", e_ratio, "Switching time over smearing length");
  eval->add_option("--omega-t", e_omega_t, "Gap times switching time");
  eval->add_option("--omega", e_omega, "Gap (dimensional form)");
  eval->add_option("--t-switch", e_t_switch, "Switching time (dimensional form)");
  eval->add_option("--ell", e_ell, "Smearing length (dimensional form)");
  eval->add_flag("--pointlike", e_pointlike, "Delta-smeared detector");
  add_common(eval, eval_common, "ei2d");

  Common sweep_common;
  SweepConfig sweep_config;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate over a parameter grid");
  sweep->add_option("--v", sweep_config.v_values, "Speeds")->delimiter(',');
  sweep->add_option("--t-over-ell", sweep_config.t_over_ell_values, "T/ell values")
      ->delimiter(',');
  sweep->add_option("--omega-t", sweep_config.omega_t_values, "Omega T values")
      ->delimiter(',');
  sweep->add_flag("--pointlike", sweep_config.pointlike, "Delta-smeared detectors");
  add_common(sweep, sweep_common, "dimensionless");

  ValidateOptions validate_options;
  std::string grid = "standard";
  std::string validate_config;
  CLI::App* validate =
      app.add_subcommand("validate", "Cross-check every evaluation path on a grid");
  validate->add_option("--grid", grid, "standard (12 points) or quick (3 points)")
      ->check(CLI::IsMember({"standard", "quick"}))
      ->capture_default_str();
  validate->add_option("--mc-samples", validate_options.mc_samples, "Monte-Carlo samples")
      ->capture_default_str();
  validate->add_option("--seed", validate_options.mc_seed, "Monte-Carlo seed")
      ->capture_default_str();
  validate->add_option("--jobs", validate_options.jobs, "Monte-Carlo worker threads")
      ->capture_default_str();
  validate->add_option("--config", validate_config, "Flat key = value file");

  try {
    std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
    args = merge_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*eval) {
      const Common& c = eval_common;
      detector::DetectorConfig config;
      const bool dimensional = e_omega || e_t_switch || e_ell;
      if (e_pointlike) {
        config = config_for_triple(e_v, e_ratio.value_or(0.0), e_omega_t.value_or(0.0), true);
        if (e_omega) config.omega = *e_omega;
        if (e_t_switch) config.t_switch = *e_t_switch;
      } else if (dimensional) {
        if (!e_omega || !e_t_switch || !e_ell) {
          throw std::invalid_argument("dimensional form needs --omega, --t-switch and --ell");
        }
        config.v = e_v;
        config.omega = *e_omega;
        config.t_switch = *e_t_switch;
        config.ell = *e_ell;
      } else {
        if (!e_ratio || !e_omega_t) {
          throw std::invalid_argument(
              "give --t-over-ell and --omega-t, or --omega, --t-switch and --ell");
        }
        config = config_for_triple(e_v, *e_ratio, *e_omega_t, false);
      }
      config.validate();
      c.quad.validate();
      if (c.jobs == 0) throw std::invalid_argument("--jobs must be >= 1");
      const ResultRow row = evaluate_row(config, parse_path_or_throw(c.path), c.quad,
                                         c.mc_samples, c.seed, c.jobs, !c.no_timing);
      emit(c, std::span(&row, 1), out);
      return row.converged ? kSuccess : kNonConvergence;
    }

    if (*sweep) {
      const Common& c = sweep_common;
      sweep_config.path = parse_path_or_throw(c.path);
      sweep_config.quad = c.quad;
      sweep_config.mc_samples = c.mc_samples;
      sweep_config.mc_seed = c.seed;
      sweep_config.output_format = parse_format(c.format);
      sweep_config.jobs = c.jobs;
      sweep_config.timing = !c.no_timing;
      const std::vector<ResultRow> rows = run_sweep(sweep_config);
      emit(c, rows, out);
      const bool all_converged =
          std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.converged; });
      return all_converged ? kSuccess : kNonConvergence;
    }

    validate_options.grid = grid == "quick" ? ValidationGrid::Quick : ValidationGrid::Standard;
    if (validate_options.jobs == 0) throw std::invalid_argument("--jobs must be >= 1");
    return run_validate(validate_options, out);
  } catch (const NonConvergenceError& e) {
    err << app.get_name() << ": " << e.what() << " (best estimate " << e.best_estimate()
        << " +- " << e.error_estimate() << ")\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << app.get_name() << ": " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace udw::cli
