#pragma once

// Frame dependence of the second-order evolution of a smeared qubit
// Unruh-DeWitt detector.
//
// The central object is Tr(rho_phi E): the field expectation of the operator
// that collects the commutator of the interaction Hamiltonian density over
// pairs of events whose time order differs between the detector's rest frame
// and a second foliation. It is evaluated along independent routes:
//
//   MonteCarloReference  8-dimensional importance-sampled integral over
//                        (tau, xbar, tau', xbar'), membership in the
//                        order-flipping region decided event by event.
//   Reduced3D            tau and longitudinal-centre Gaussians integrated
//                        analytically; (sigma, xi, r) by nested quadrature.
//   EiClosedForm2D       the r integral done in closed form through Ei.
//   Dimensionless2D      EiClosedForm2D in the variables s = sigma/(vT),
//                        zeta = xi/T; depends only on (v, T/ell, Omega T).
//
// The closed-form routes compare the detector rest frame against the lab.

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>

#include "udw/detector.hpp"
#include "udw/field.hpp"
#include "udw/geometry.hpp"
#include "udw/numerics/quadrature.hpp"

namespace udw::violation {

enum class EvaluationPath {
  MonteCarloReference,
  Reduced3D,
  EiClosedForm2D,
  Dimensionless2D,
  PointlikeAnalytic,
};

/// Short names used on the command line: mc, reduced3d, ei2d,
/// dimensionless, pointlike.
std::string_view to_string(EvaluationPath path) noexcept;
std::optional<EvaluationPath> parse_path(std::string_view name) noexcept;

/// Inputs a result was computed for. The dimensionless triple is always set;
/// dimensional values only when the path saw them.
struct ViolationParams {
  double v = 0.0;
  double t_over_ell = 0.0;
  double omega_t = 0.0;
  std::optional<double> t_switch;
  std::optional<double> ell;
  std::optional<double> omega;
};

struct ViolationResult {
  std::complex<double> value;
  EvaluationPath path = EvaluationPath::EiClosedForm2D;
  double error_estimate = 0.0;
  ViolationParams params;
};

// Constants multiplying i * T / ell^3 times the remaining integral.
// Ei form:      +1/(16 pi^3)  with integrand exp(-c s^2) sin(W s) Ei(.)
// Reduced form: -1/(8 pi^3)   with integrand of the (sigma, xi, r) triple
// Both follow from -2i * Lambda Lambda W with chi = exp(-tau^2/2T^2)/sqrt(2pi),
// a normalized Gaussian f and W = 1/(2 pi^2 |dx|^2); the Monte-Carlo
// reference checks them.
inline constexpr double kPiCubed =
    3.141592653589793238462643383279502884 * 3.141592653589793238462643383279502884 *
    3.141592653589793238462643383279502884;
inline constexpr double kEiFormPrefactor = 1.0 / (16.0 * kPiCubed);
inline constexpr double kReducedFormPrefactor = -1.0 / (8.0 * kPiCubed);

/// Gaussian detector parameters with no sign restriction on omega. Used by
/// the raw integral routines below.
struct GaussianKinematics {
  double v;
  double t_switch;
  double ell;
  double omega;
};

/// Im Tr(rho_phi E) along the Reduced3D route. Does not throw on
/// non-convergence; check `converged`.
numerics::QuadResult im_trace_e_reduced3d(const GaussianKinematics& k,
                                          const numerics::QuadratureSpec& quad);
/// Im Tr(rho_phi E) along the EiClosedForm2D route.
numerics::QuadResult im_trace_e_ei2d(const GaussianKinematics& k,
                                     const numerics::QuadratureSpec& quad);
/// Im Tr(rho_phi E) along the Dimensionless2D route.
numerics::QuadResult im_trace_e_dimensionless(double v, double t_over_ell,
                                              double omega_t,
                                              const numerics::QuadratureSpec& quad);

/// Monte-Carlo reference for an arbitrary second inertial foliation
/// `frame_t`. Gaussian importance sampling from chi(tau) f(xbar) chi(tau')
/// f(xbar'); reproducible for fixed (samples, seed) whatever `workers` is.
/// Exact zeros for pointlike detectors, omega = 0, and frame_t equal to the
/// detector rest frame. Requires samples >= 1e4.
ViolationResult trace_e_reference_mc(const detector::DetectorConfig& config,
                                     const field::FieldState& state,
                                     const geometry::FrameSpec& frame_t,
                                     std::uint64_t samples, std::uint64_t seed,
                                     unsigned workers = 1);

/// Throws NonConvergenceError carrying the best estimate.
ViolationResult trace_e_reduced3d(const detector::DetectorConfig& config,
                                  const field::FieldState& state,
                                  const numerics::QuadratureSpec& quad = {});

/// Throws NonConvergenceError carrying the best estimate.
ViolationResult trace_e_ei_2d(const detector::DetectorConfig& config,
                              const field::FieldState& state,
                              const numerics::QuadratureSpec& quad = {});

/// Requires 0 <= v < 1, t_over_ell > 0, finite omega_t. Exact zero for
/// v = 0 or omega_t = 0.
ViolationResult trace_e_dimensionless(double v, double t_over_ell, double omega_t,
                                      const numerics::QuadratureSpec& quad = {});

/// A delta-smeared detector has no support in the order-flipping region, so
/// the result is an analytic zero. Throws std::invalid_argument for Gaussian
/// detectors.
ViolationResult pointlike_trace_e(const detector::DetectorConfig& config);

/// Dispatches to the evaluation route named by `path` (frame_t = lab).
/// Pointlike detectors always take the analytic route.
ViolationResult evaluate(EvaluationPath path, const detector::DetectorConfig& config,
                         const numerics::QuadratureSpec& quad, std::uint64_t mc_samples,
                         std::uint64_t mc_seed, unsigned workers = 1);

}  // namespace udw::violation
