#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "udw/cli/cli.hpp"
#include "udw/errors.hpp"
#include "udw/field.hpp"

namespace udw::cli {

using violation::EvaluationPath;
using violation::ViolationResult;

void SweepConfig::validate() const {
  if (v_values.empty() || t_over_ell_values.empty() || omega_t_values.empty()) {
    throw std::invalid_argument("sweep lists must be non-empty");
  }
  for (double v : v_values) {
    if (!(v >= 0.0 && v < 1.0)) {
      throw std::invalid_argument("sweep speeds must lie in [0, 1)");
    }
  }
  for (double k : t_over_ell_values) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw std::invalid_argument("T/ell values must be > 0");
    }
  }
  for (double w : omega_t_values) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("Omega T values must be >= 0");
    }
  }
  if (jobs == 0) throw std::invalid_argument("--jobs must be >= 1");
  quad.validate();
}

detector::DetectorConfig config_for_triple(double v, double t_over_ell, double omega_t,
                                           bool pointlike) {
  detector::DetectorConfig c;
  c.v = v;
  c.t_switch = 1.0;
  c.ell = 1.0 / t_over_ell;
  c.omega = omega_t;
  c.smearing_kind =
      pointlike ? detector::SmearingKind::Pointlike : detector::SmearingKind::Gaussian;
  return c;
}

ResultRow evaluate_row(const detector::DetectorConfig& config, EvaluationPath path,
                       const numerics::QuadratureSpec& quad, std::uint64_t mc_samples,
                       std::uint64_t mc_seed, unsigned mc_workers, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  ResultRow row;
  row.v = config.v;
  row.omega_t = config.omega * config.t_switch;
  row.t_over_ell = config.t_switch / config.ell;
  try {
    const ViolationResult r =
        violation::evaluate(path, config, quad, mc_samples, mc_seed, mc_workers);
    row.im_value = r.value.imag();
    row.err = r.error_estimate;
    row.path = std::string(violation::to_string(r.path));
  } catch (const NonConvergenceError& e) {
    row.im_value = e.best_estimate();
    row.err = e.error_estimate();
    row.path = std::string(violation::to_string(path));
    row.converged = false;
  }
  if (timing) {
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

std::vector<ResultRow> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<detector::DetectorConfig> points;
  for (double v : config.v_values) {
    for (double k : config.t_over_ell_values) {
      for (double w : config.omega_t_values) {
        points.push_back(config_for_triple(v, k, w, config.pointlike));
      }
    }
  }

  std::vector<ResultRow> rows(points.size());
  const unsigned mc_workers = points.size() == 1 ? config.jobs : 1;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = evaluate_row(points[i], config.path, config.quad, config.mc_samples,
                             config.mc_seed, mc_workers, config.timing);
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(config.jobs, points.size()));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return rows;
}

std::vector<ValidationPoint> validation_grid(ValidationGrid grid) {
  if (grid == ValidationGrid::Quick) {
    return {{0.3, 1.0, 0.5}, {0.6, 10.0, 2.0}, {0.9, 1.0, 2.0}};
  }
  std::vector<ValidationPoint> points;
  for (double v : {0.3, 0.6, 0.9}) {
    for (double k : {1.0, 10.0}) {
      for (double w : {0.5, 2.0}) points.push_back({v, k, w});
    }
  }
  return points;
}

namespace {

bool relative_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

bool imaginary_within_error(const ViolationResult& r) {
  return std::abs(r.value.real()) <= r.error_estimate;
}

}  // namespace

int run_validate(const ValidateOptions& options, std::ostream& report) {
  const field::FieldState vacuum = field::FieldState::massless_vacuum();
  bool all_ok = true;
  report << std::setprecision(10);

  // Exact zeros: pointlike detector, comoving frames, vanishing gap.
  {
    detector::DetectorConfig pointlike = config_for_triple(0.9, 10.0, 1.0, true);
    detector::DetectorConfig comoving = config_for_triple(0.0, 10.0, 1.0, false);
    detector::DetectorConfig gapless = config_for_triple(0.9, 10.0, 0.0, false);
    bool zeros_ok = true;
    for (EvaluationPath path :
         {EvaluationPath::MonteCarloReference, EvaluationPath::Reduced3D,
          EvaluationPath::EiClosedForm2D, EvaluationPath::Dimensionless2D}) {
      for (const auto& c : {pointlike, comoving, gapless}) {
        const ViolationResult r = violation::evaluate(path, c, options.quad, 10'000,
                                                      options.mc_seed, options.jobs);
        zeros_ok = zeros_ok && r.value == 0.0 && r.error_estimate == 0.0;
      }
    }
    report << "exact zeros (pointlike, comoving, zero gap): " << (zeros_ok ? "ok" : "FAIL")
           << '\n';
    all_ok = all_ok && zeros_ok;
  }

  for (const ValidationPoint& p : validation_grid(options.grid)) {
    const detector::DetectorConfig c = config_for_triple(p.v, p.t_over_ell, p.omega_t, false);
    ViolationResult reduced = violation::trace_e_reduced3d(c, vacuum, options.quad);
    ViolationResult ei = violation::trace_e_ei_2d(c, vacuum, options.quad);
    ViolationResult dimless =
        violation::trace_e_dimensionless(p.v, p.t_over_ell, p.omega_t, options.quad);
    for (ViolationResult* r : {&reduced, &ei, &dimless}) {
      r->value *= options.closed_form_scale;
      r->error_estimate *= std::abs(options.closed_form_scale);
    }
    const ViolationResult mc = violation::trace_e_reference_mc(
        c, vacuum, geometry::FrameSpec::lab(), options.mc_samples, options.mc_seed,
        options.jobs);

    const double a = reduced.value.imag();
    const double b = ei.value.imag();
    const double d = dimless.value.imag();
    const double m = mc.value.imag();
    const double tol = options.closed_form_tolerance;
    const bool closed_ok =
        relative_close(a, b, tol) && relative_close(b, d, tol) && relative_close(a, d, tol);
    double worst_sigmas = 0.0;
    for (const ViolationResult* r : {&reduced, &ei, &dimless}) {
      const double combined =
          std::hypot(mc.error_estimate, r->error_estimate);
      worst_sigmas = std::max(worst_sigmas, std::abs(r->value.imag() - m) / combined);
    }
    const bool mc_ok = worst_sigmas <= options.mc_sigmas;
    const bool imag_ok = imaginary_within_error(reduced) && imaginary_within_error(ei) &&
                         imaginary_within_error(dimless) && imaginary_within_error(mc);
    const bool ok = closed_ok && mc_ok && imag_ok;
    all_ok = all_ok && ok;

    report << "v=" << p.v << " T/ell=" << p.t_over_ell << " OmegaT=" << p.omega_t
           << "  Im: reduced3d=" << a << " ei2d=" << b << " dimensionless=" << d
           << " mc=" << m << "+-" << mc.error_estimate << "  ratios: ei2d/reduced3d="
           << b / a << " dimensionless/ei2d=" << d / b << " mc/ei2d=" << m / b
           << "  worst mc deviation=" << worst_sigmas << " sigma  "
           << (ok ? "ok" : "FAIL") << '\n';
    if (!ok) {
      report << "  offending point: v=" << p.v << " t_over_ell=" << p.t_over_ell
             << " omega_t=" << p.omega_t << (closed_ok ? "" : " [closed forms disagree]")
             << (mc_ok ? "" : " [Monte-Carlo disagrees]")
             << (imag_ok ? "" : " [real part exceeds error]") << '\n';
    }
  }
  report << (all_ok ? "validation passed" : "validation FAILED") << '\n';
  return all_ok ? kSuccess : kValidationFailure;
}

}  // namespace udw::cli
