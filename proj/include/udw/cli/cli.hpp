#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "udw/numerics/quadrature.hpp"
#include "udw/violation.hpp"

namespace udw::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNonConvergence = 2,
  kValidationFailure = 3,
};

enum class OutputFormat { Csv, Json };

/// One output record: CSV columns v,t_over_ell,omega_t,im_value,err,path,seconds.
struct ResultRow {
  double v = 0.0;
  double t_over_ell = 0.0;
  double omega_t = 0.0;
  double im_value = 0.0;
  double err = 0.0;
  std::string path;
  double seconds = 0.0;
  bool converged = true;
};

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kCsvHeader = "v,t_over_ell,omega_t,im_value,err,path,seconds";

void write_csv(std::ostream& out, std::span<const ResultRow> rows);
void write_json(std::ostream& out, std::span<const ResultRow> rows);
void write_rows(std::ostream& out, std::span<const ResultRow> rows, OutputFormat format);

/// A sweep over the Cartesian product of the three lists, rows in
/// lexicographic order (v outermost).
struct SweepConfig {
  std::vector<double> v_values;
  std::vector<double> t_over_ell_values;
  std::vector<double> omega_t_values;
  violation::EvaluationPath path = violation::EvaluationPath::Dimensionless2D;
  numerics::QuadratureSpec quad;
  std::uint64_t mc_samples = 10'000'000;
  std::uint64_t mc_seed = 1;
  OutputFormat output_format = OutputFormat::Csv;
  unsigned jobs = 1;
  bool pointlike = false;
  bool timing = true;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// Detector configuration standing for a dimensionless triple: T = 1,
/// ell = 1 / t_over_ell, Omega = omega_t.
detector::DetectorConfig config_for_triple(double v, double t_over_ell, double omega_t,
                                           bool pointlike);

/// Evaluates one parameter point; non-convergence yields a row with
/// converged = false carrying the best estimate.
ResultRow evaluate_row(const detector::DetectorConfig& config,
                       violation::EvaluationPath path, const numerics::QuadratureSpec& quad,
                       std::uint64_t mc_samples, std::uint64_t mc_seed, unsigned mc_workers,
                       bool timing);

/// Rows in deterministic order, evaluated on up to `jobs` threads.
std::vector<ResultRow> run_sweep(const SweepConfig& config);

enum class ValidationGrid { Standard, Quick };

struct ValidateOptions {
  ValidationGrid grid = ValidationGrid::Standard;
  std::uint64_t mc_samples = 10'000'000;
  std::uint64_t mc_seed = 20240601;
  unsigned jobs = 1;
  numerics::QuadratureSpec quad;
  double closed_form_tolerance = 1e-4;
  double mc_sigmas = 3.0;
  /// Multiplies every closed-form result before comparison. Only tests set
  /// this, to check that a wrong constant is caught.
  double closed_form_scale = 1.0;
};

struct ValidationPoint {
  double v;
  double t_over_ell;
  double omega_t;
};

std::vector<ValidationPoint> validation_grid(ValidationGrid grid);

/// Runs the path-equivalence and exact-zero checks, writing a report.
/// Returns kSuccess or kValidationFailure.
int run_validate(const ValidateOptions& options, std::ostream& report);

/// Flat "key = value" configuration file; keys are long flag names without
/// the leading dashes, '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& text);

/// Full command-line entry point. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace udw::cli
