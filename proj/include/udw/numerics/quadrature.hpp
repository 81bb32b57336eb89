#pragma once

#include <functional>
#include <limits>

namespace udw::numerics {

/// Tolerances and limits shared by every adaptive integration.
struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  /// Gaussian tails are cut this many standard deviations out.
  double truncation_sigma = 12.0;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;
};

enum class Endpoint { Regular, LogSingular };

/// Behaviour of the integrand at each end of the interval. A LogSingular end
/// must be finite; it is treated with a polynomial change of variables whose
/// Jacobian vanishes there.
struct EndpointSpec {
  Endpoint left = Endpoint::Regular;
  Endpoint right = Endpoint::Regular;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using Integrand1D = std::function<double(double)>;
/// An integrand that is itself a numerical estimate (value and error).
using EstimateIntegrand = std::function<QuadResult(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over [a, b].
/// Either end may be infinite; infinite ends are mapped through
/// x = a + u / (1 - u). Never throws on non-convergence: inspect
/// `converged`.
QuadResult integrate_adaptive(const Integrand1D& f, double a, double b,
                              const QuadratureSpec& spec,
                              EndpointSpec ends = {});

/// As integrate_adaptive, for integrands carrying their own error estimate.
/// The returned error adds the outer rule error to the integrated inner
/// errors; `converged` requires every inner estimate to have converged.
QuadResult integrate_adaptive(const EstimateIntegrand& f, double a, double b,
                              const QuadratureSpec& spec,
                              EndpointSpec ends = {});

/// integrate_adaptive, throwing NonConvergenceError (carrying the best
/// estimate) when max_subdivisions is exhausted.
QuadResult quad_adaptive_1d(const Integrand1D& f, double a, double b,
                            const QuadratureSpec& spec, EndpointSpec ends = {});

struct InnerDomain {
  double lo = 0.0;
  double hi = 0.0;
  EndpointSpec ends;
};

using Integrand2D = std::function<double(double outer, double inner)>;
using InnerDomainOf = std::function<InnerDomain(double outer)>;

/// Iterated adaptive integration: the outer integrand at x is the adaptive
/// integral of f(x, .) over inner_domain(x). Throws NonConvergenceError if
/// either level fails.
QuadResult quad_nested_2d(const Integrand2D& f, double outer_lo, double outer_hi,
                          const InnerDomainOf& inner_domain,
                          const QuadratureSpec& spec);

/// Tolerances for an inner integral nested in an outer one: ten times
/// tighter, so inner errors stay below the outer target.
QuadratureSpec tightened_for_inner(const QuadratureSpec& spec);

/// Throws NonConvergenceError if r did not converge.
const QuadResult& require_converged(const QuadResult& r, const char* what);

}  // namespace udw::numerics
