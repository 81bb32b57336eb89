#include "udw/violation.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udw/errors.hpp"
#include "udw/numerics/expint.hpp"
#include "udw/numerics/monte_carlo.hpp"

namespace udw::violation {

namespace {

using detector::DetectorConfig;
using detector::SmearingKind;
using numerics::EndpointSpec;
using numerics::Endpoint;
using numerics::QuadratureSpec;
using numerics::QuadResult;

// Gaussian damping below 1e-18 of its peak is dropped.
const double kDampingCutoff = std::log(1e18);
// Above this speed the Ei kernel's log singularity at xi = -sigma sits close
// to the inner boundary and gets a log-aware panel.
constexpr double kLogPanelSpeed = 0.95;
constexpr std::uint64_t kMinMcSamples = 10'000;

ViolationParams params_of(const DetectorConfig& c) {
  ViolationParams p;
  p.v = c.v;
  p.t_over_ell =
      c.smearing_kind == SmearingKind::Gaussian ? c.t_switch / c.ell : 0.0;
  p.omega_t = c.omega * c.t_switch;
  p.t_switch = c.t_switch;
  p.omega = c.omega;
  if (c.smearing_kind == SmearingKind::Gaussian) p.ell = c.ell;
  return p;
}

ViolationResult exact_zero(EvaluationPath path, ViolationParams params) {
  return ViolationResult{{0.0, 0.0}, path, 0.0, std::move(params)};
}

void check_kinematics(const GaussianKinematics& k) {
  if (!std::isfinite(k.omega)) throw std::invalid_argument("omega must be finite");
  if (!(k.t_switch > 0.0) || !(k.ell > 0.0) || !std::isfinite(k.t_switch) ||
      !std::isfinite(k.ell)) {
    throw std::invalid_argument("switching time and smearing length must be > 0");
  }
  static_cast<void>(geometry::FrameSpec{k.v});
}

QuadResult zero_quad() { return QuadResult{0.0, 0.0, true, 0}; }

// Inner-panel layout shared by the two Ei routes: [boundary - width,
// boundary], with a log-aware sub-panel against the boundary at high speed.
QuadResult integrate_towards_boundary(const numerics::Integrand1D& g, double boundary,
                                      double width, double log_panel, bool log_aware,
                                      const QuadratureSpec& spec) {
  if (!log_aware || log_panel >= width) {
    return numerics::integrate_adaptive(g, boundary - width, boundary, spec);
  }
  QuadResult far = numerics::integrate_adaptive(g, boundary - width,
                                                boundary - log_panel, spec);
  QuadResult near = numerics::integrate_adaptive(
      g, boundary - log_panel, boundary, spec,
      EndpointSpec{Endpoint::Regular, Endpoint::LogSingular});
  return QuadResult{far.value + near.value, far.error + near.error,
                    far.converged && near.converged, far.evaluations + near.evaluations};
}

// Ei of a strictly negative argument, returning 0 where the argument is too
// close to the pole to represent; the caller's sin factor is then below
// 1e-140 so the contribution is negligible.
double ei_negative(double arg) {
  if (!(arg < -1e-290)) return 0.0;
  return numerics::expint_ei(arg);
}

}  // namespace

std::string_view to_string(EvaluationPath path) noexcept {
  switch (path) {
    case EvaluationPath::MonteCarloReference:
      return "mc";
    case EvaluationPath::Reduced3D:
      return "reduced3d";
    case EvaluationPath::EiClosedForm2D:
      return "ei2d";
    case EvaluationPath::Dimensionless2D:
      return "dimensionless";
    case EvaluationPath::PointlikeAnalytic:
      return "pointlike";
  }
  return "unknown";
}

std::optional<EvaluationPath> parse_path(std::string_view name) noexcept {
  for (EvaluationPath p :
       {EvaluationPath::MonteCarloReference, EvaluationPath::Reduced3D,
        EvaluationPath::EiClosedForm2D, EvaluationPath::Dimensionless2D,
        EvaluationPath::PointlikeAnalytic}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

QuadResult im_trace_e_reduced3d(const GaussianKinematics& k, const QuadratureSpec& quad) {
  check_kinematics(k);
  quad.validate();
  if (k.omega == 0.0 || k.v == 0.0) return zero_quad();
  if (k.v < 0.0) {
    // Mirror x -> -x maps the region for -v onto the region for v.
    return im_trace_e_reduced3d({-k.v, k.t_switch, k.ell, k.omega}, quad);
  }

  const double T = k.t_switch;
  const double ell = k.ell;
  const double v = k.v;
  const double damping = 1.0 / (4.0 * T * T) + 1.0 / (4.0 * ell * ell);
  const double sigma_max = std::sqrt(kDampingCutoff / damping);
  const double width = quad.truncation_sigma * std::numbers::sqrt2 * ell;
  const double scale = kReducedFormPrefactor * T / (ell * ell * ell);

  const QuadratureSpec middle_spec = numerics::tightened_for_inner(quad);
  const QuadratureSpec inner_spec = numerics::tightened_for_inner(middle_spec);

  // Integral over r of r exp(-r^2/4 ell^2) / (a + r^2), a > 0. Split where
  // the Lorentzian factor turns over.
  auto r_integral = [&](double a) {
    auto g = [&](double r) { return r * std::exp(-r * r / (4.0 * ell * ell)) / (a + r * r); };
    const double knee = std::sqrt(a);
    if (knee >= width) return numerics::integrate_adaptive(g, 0.0, width, inner_spec);
    QuadResult lo = numerics::integrate_adaptive(g, 0.0, knee, inner_spec);
    QuadResult hi = numerics::integrate_adaptive(g, knee, width, inner_spec);
    return QuadResult{lo.value + hi.value, lo.error + hi.error,
                      lo.converged && hi.converged, lo.evaluations + hi.evaluations};
  };

  const numerics::EstimateIntegrand outer = [&](double sigma) {
    const double weight =
        scale * std::sin(k.omega * sigma) * std::exp(-sigma * sigma / (4.0 * T * T));
    if (weight == 0.0) return zero_quad();
    const numerics::EstimateIntegrand middle = [&](double xi) {
      const double a = xi * xi - sigma * sigma;
      QuadResult r = r_integral(a);
      const double w = weight * std::exp(-xi * xi / (4.0 * ell * ell));
      r.value *= w;
      r.error *= std::abs(w);
      return r;
    };
    const double boundary = -sigma / v;
    return numerics::integrate_adaptive(middle, boundary - width, boundary, middle_spec);
  };
  return numerics::integrate_adaptive(outer, 0.0, sigma_max, quad);
}

QuadResult im_trace_e_ei2d(const GaussianKinematics& k, const QuadratureSpec& quad) {
  check_kinematics(k);
  quad.validate();
  if (k.omega == 0.0 || k.v == 0.0) return zero_quad();
  if (k.v < 0.0) return im_trace_e_ei2d({-k.v, k.t_switch, k.ell, k.omega}, quad);

  const double T = k.t_switch;
  const double ell = k.ell;
  const double v = k.v;
  const double damping = 1.0 / (4.0 * T * T) + 1.0 / (4.0 * ell * ell);
  const double sigma_max = std::sqrt(kDampingCutoff / damping);
  const double width = quad.truncation_sigma * std::numbers::sqrt2 * ell;
  const double scale = kEiFormPrefactor * T / (ell * ell * ell);
  const bool log_aware = v > kLogPanelSpeed;
  const QuadratureSpec inner_spec = numerics::tightened_for_inner(quad);

  const numerics::EstimateIntegrand outer = [&](double sigma) {
    const double weight =
        scale * std::exp(-damping * sigma * sigma) * std::sin(k.omega * sigma);
    if (weight == 0.0) return zero_quad();
    auto g = [&](double xi) {
      return weight * ei_negative((sigma * sigma - xi * xi) / (4.0 * ell * ell));
    };
    return integrate_towards_boundary(g, -sigma / v, width, std::min(width, ell),
                                      log_aware, inner_spec);
  };
  return numerics::integrate_adaptive(outer, 0.0, sigma_max, quad);
}

QuadResult im_trace_e_dimensionless(double v, double t_over_ell, double omega_t,
                                    const QuadratureSpec& quad) {
  static_cast<void>(geometry::FrameSpec{v});
  if (!(t_over_ell > 0.0) || !std::isfinite(t_over_ell)) {
    throw std::invalid_argument("T/ell must be > 0");
  }
  if (!std::isfinite(omega_t)) throw std::invalid_argument("Omega T must be finite");
  quad.validate();
  if (omega_t == 0.0 || v == 0.0) return zero_quad();
  if (v < 0.0) return im_trace_e_dimensionless(-v, t_over_ell, omega_t, quad);

  const double ratio2 = t_over_ell * t_over_ell;
  const double damping = 0.25 * v * v * (1.0 + ratio2);
  const double s_max = std::sqrt(kDampingCutoff / damping);
  const double width = quad.truncation_sigma * std::numbers::sqrt2 / t_over_ell;
  const double scale = kEiFormPrefactor * ratio2 * t_over_ell * v;
  const bool log_aware = v > kLogPanelSpeed;
  const QuadratureSpec inner_spec = numerics::tightened_for_inner(quad);

  const numerics::EstimateIntegrand outer = [&](double s) {
    const double weight = scale * std::exp(-damping * s * s) * std::sin(omega_t * v * s);
    if (weight == 0.0) return zero_quad();
    const double sv2 = s * s * v * v;
    auto g = [&](double zeta) {
      return weight * ei_negative((sv2 - zeta * zeta) * ratio2 / 4.0);
    };
    return integrate_towards_boundary(g, -s, width, std::min(width, 1.0 / t_over_ell),
                                      log_aware, inner_spec);
  };
  return numerics::integrate_adaptive(outer, 0.0, s_max, quad);
}

ViolationResult pointlike_trace_e(const DetectorConfig& config) {
  if (config.smearing_kind != SmearingKind::Pointlike) {
    throw std::invalid_argument(
        "pointlike_trace_e called for a Gaussian-smeared detector");
  }
  config.validate();
  return exact_zero(EvaluationPath::PointlikeAnalytic, params_of(config));
}

ViolationResult trace_e_reference_mc(const DetectorConfig& config,
                                     const field::FieldState& state,
                                     const geometry::FrameSpec& frame_t,
                                     std::uint64_t samples, std::uint64_t seed,
                                     unsigned workers) {
  if (config.smearing_kind == SmearingKind::Pointlike) return pointlike_trace_e(config);
  config.validate();
  if (samples < kMinMcSamples) {
    throw std::invalid_argument("Monte-Carlo reference needs at least 1e4 samples");
  }
  const geometry::FrameSpec rest{config.v};
  ViolationParams params = params_of(config);
  if (config.omega == 0.0 || rest == frame_t) {
    return exact_zero(EvaluationPath::MonteCarloReference, std::move(params));
  }

  const double T = config.t_switch;
  const double ell = config.ell;
  const numerics::GaussianProductSampler sampler({0, 0, 0, 0, 0, 0, 0, 0},
                                                 {T, ell, ell, ell, T, ell, ell, ell});
  auto events = [&rest](std::span<const double> p) {
    return std::pair{geometry::SpacetimeEvent{p[0], p[1], p[2], p[3], rest},
                     geometry::SpacetimeEvent{p[4], p[5], p[6], p[7], rest}};
  };
  const numerics::RegionPredicate accept = [&](std::span<const double> p) {
    const auto [a, b] = events(p);
    return geometry::in_s_leq(a, b, rest, frame_t);
  };
  // -2i Lambda(x) Lambda(x') W(x, x') sin(Omega (tau - tau')) / density
  const numerics::McIntegrand integrand = [&](std::span<const double> p) {
    const auto [a, b] = events(p);
    const double lambda_a = detector::spacetime_smearing(a.t, {a.x, a.y, a.z}, config);
    const double lambda_b = detector::spacetime_smearing(b.t, {b.x, b.y, b.z}, config);
    const double w = field::wightman_spacelike(geometry::interval_sq(a, b), state);
    const double kernel = detector::monopole_commutator_kernel(a.t, b.t, config.omega);
    const double reweighted = lambda_a * lambda_b * w * kernel / sampler.density(p);
    return std::complex<double>{0.0, -reweighted};
  };

  const numerics::McEstimate est =
      numerics::mc_integrate(integrand, sampler, accept, samples, seed, workers);
  return ViolationResult{est.mean, EvaluationPath::MonteCarloReference, est.std_error,
                         std::move(params)};
}

namespace {

ViolationResult finish(const QuadResult& r, EvaluationPath path, ViolationParams params,
                       const char* what) {
  numerics::require_converged(r, what);
  return ViolationResult{{0.0, r.value}, path, r.error, std::move(params)};
}

}  // namespace

ViolationResult trace_e_reduced3d(const DetectorConfig& config,
                                  const field::FieldState& state,
                                  const QuadratureSpec& quad) {
  if (config.smearing_kind == SmearingKind::Pointlike) return pointlike_trace_e(config);
  config.validate();
  if (state.kind != field::FieldKind::MasslessVacuum3p1) {
    throw std::invalid_argument("unsupported field state");
  }
  const QuadResult r = im_trace_e_reduced3d(
      {config.v, config.t_switch, config.ell, config.omega}, quad);
  return finish(r, EvaluationPath::Reduced3D, params_of(config), "trace_e_reduced3d");
}

ViolationResult trace_e_ei_2d(const DetectorConfig& config, const field::FieldState& state,
                              const QuadratureSpec& quad) {
  if (config.smearing_kind == SmearingKind::Pointlike) return pointlike_trace_e(config);
  config.validate();
  if (state.kind != field::FieldKind::MasslessVacuum3p1) {
    throw std::invalid_argument("unsupported field state");
  }
  const QuadResult r =
      im_trace_e_ei2d({config.v, config.t_switch, config.ell, config.omega}, quad);
  return finish(r, EvaluationPath::EiClosedForm2D, params_of(config), "trace_e_ei_2d");
}

ViolationResult trace_e_dimensionless(double v, double t_over_ell, double omega_t,
                                      const QuadratureSpec& quad) {
  if (!(v >= 0.0)) throw std::invalid_argument("speed must be >= 0");
  const QuadResult r = im_trace_e_dimensionless(v, t_over_ell, omega_t, quad);
  ViolationParams params;
  params.v = v;
  params.t_over_ell = t_over_ell;
  params.omega_t = omega_t;
  return finish(r, EvaluationPath::Dimensionless2D, std::move(params),
                "trace_e_dimensionless");
}

ViolationResult evaluate(EvaluationPath path, const DetectorConfig& config,
                         const QuadratureSpec& quad, std::uint64_t mc_samples,
                         std::uint64_t mc_seed, unsigned workers) {
  if (config.smearing_kind == SmearingKind::Pointlike) return pointlike_trace_e(config);
  const field::FieldState vacuum = field::FieldState::massless_vacuum();
  switch (path) {
    case EvaluationPath::MonteCarloReference:
      return trace_e_reference_mc(config, vacuum, geometry::FrameSpec::lab(), mc_samples,
                                  mc_seed, workers);
    case EvaluationPath::Reduced3D:
      return trace_e_reduced3d(config, vacuum, quad);
    case EvaluationPath::EiClosedForm2D:
      return trace_e_ei_2d(config, vacuum, quad);
    case EvaluationPath::Dimensionless2D: {
      config.validate();
      ViolationResult r = trace_e_dimensionless(
          config.v, config.t_switch / config.ell, config.omega * config.t_switch, quad);
      r.params = params_of(config);
      return r;
    }
    case EvaluationPath::PointlikeAnalytic:
      return pointlike_trace_e(config);
  }
  throw std::invalid_argument("unknown evaluation path");
}

}  // namespace udw::violation
