#include <doctest.h>

#include <cmath>
#include <vector>

#include "udw/errors.hpp"
#include "udw/numerics/quadrature.hpp"

using namespace udw::numerics;

namespace {

QuadratureSpec tight() {
  QuadratureSpec s;
  s.abs_tol = 1e-14;
  s.rel_tol = 1e-13;
  return s;
}

struct Case {
  const char* name;
  Integrand1D f;
  double a, b;
  EndpointSpec ends;
  double exact;
  double tolerance;
};

std::vector<Case> battery() {
  const EndpointSpec log_left{Endpoint::LogSingular, Endpoint::Regular};
  const EndpointSpec log_right{Endpoint::Regular, Endpoint::LogSingular};
  const EndpointSpec log_both{Endpoint::LogSingular, Endpoint::LogSingular};
  const double pi = M_PI;
  return {
      {"gaussian half line", [](double x) { return std::exp(-x * x); }, 0, kInfinity, {},
       std::sqrt(pi) / 2, 1e-12},
      {"damped sine", [](double x) { return std::exp(-x) * std::sin(x); }, 0, kInfinity, {},
       0.5, 1e-12},
      {"log left", [](double x) { return std::log(x); }, 0, 1, log_left, -1.0, 1e-10},
      {"log right", [](double x) { return std::log(1 - x); }, 0, 1, log_right, -1.0, 1e-10},
      {"log both", [](double x) { return std::log(x * (1 - x)); }, 0, 1, log_both, -2.0, 1e-10},
      {"full gaussian", [](double x) { return std::exp(-x * x / 2); }, -kInfinity, kInfinity,
       {}, std::sqrt(2 * pi), 1e-12},
      {"negative half line", [](double x) { return std::exp(x); }, -kInfinity, 0, {}, 1.0,
       1e-12},
      {"polynomial", [](double x) { return x * x * x - 2 * x; }, -1, 3, {}, 12.0, 1e-12},
      {"oscillatory", [](double x) { return std::cos(20 * x); }, 0, pi / 2, {},
       std::sin(10 * pi) / 20, 1e-12},
      {"lorentzian", [](double x) { return 1 / (1 + x * x); }, 0, kInfinity, {}, pi / 2,
       1e-12},
      {"sqrt cusp", [](double x) { return std::sqrt(x); }, 0, 1, {}, 2.0 / 3, 1e-10},
      {"log times gaussian", [](double x) { return std::log(x) * std::exp(-x * x); }, 0, 1,
       log_left, -0.9059404763223628, 1e-10},
      {"reversed interval", [](double x) { return std::exp(-x); }, 1, 0, {},
       -(1 - std::exp(-1.0)), 1e-13},
  };
}

}  // namespace

TEST_CASE("quadrature battery meets the stated tolerances") {
  for (const Case& c : battery()) {
    const QuadResult r = integrate_adaptive(c.f, c.a, c.b, tight(), c.ends);
    INFO(c.name << " error " << r.error << " evals " << r.evaluations << ": " << ": " << r.value << " vs " << c.exact);
    CHECK(r.converged);
    CHECK(std::abs(r.value - c.exact) <= c.tolerance);
  }
}

TEST_CASE("quadrature error estimates are conservative on the battery") {
  int conservative = 0;
  int total = 0;
  for (const QuadratureSpec& spec : {tight(), QuadratureSpec{}, QuadratureSpec{1e-8, 1e-6, 2000, 12}}) {
    for (const Case& c : battery()) {
      const QuadResult r = quad_adaptive_1d(c.f, c.a, c.b, spec, c.ends);
      // Actual error is measured against the exact value; a floor of a few
      // ulps of the exact value absorbs rounding in the reference itself.
      const double actual = std::abs(r.value - c.exact);
      conservative += r.error + 4e-16 * std::abs(c.exact) >= actual;
      ++total;
    }
  }
  CHECK(conservative >= 0.99 * total);
}

TEST_CASE("default spec matches the documented tolerances") {
  const QuadratureSpec s;
  CHECK(s.abs_tol == 1e-12);
  CHECK(s.rel_tol == 1e-8);
  CHECK_NOTHROW(s.validate());
  QuadratureSpec bad = s;
  bad.truncation_sigma = 5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.abs_tol = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = s;
  bad.max_subdivisions = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("running out of subdivisions raises with the best estimate") {
  QuadratureSpec s = tight();
  s.max_subdivisions = 2;
  const auto f = [](double x) { return std::sin(1 / x); };
  try {
    quad_adaptive_1d(f, 1e-3, 1, s);
    FAIL("expected non-convergence");
  } catch (const udw::NonConvergenceError& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.error_estimate() > 0);
  }
  const QuadResult r = integrate_adaptive(f, 1e-3, 1, s);
  CHECK_FALSE(r.converged);
}

TEST_CASE("non-finite integrand values are reported") {
  CHECK_THROWS_AS(quad_adaptive_1d([](double x) { return 1 / (x - 0.5 + 0.0 * x); }, 0.5, 1,
                                   QuadratureSpec{}),
                  std::domain_error);
}

TEST_CASE("nested: wedge below the anti-diagonal") {
  // int_0^inf ds int_{-inf}^{-s} dzeta exp(-s^2 - zeta^2): a pi/4 wedge of
  // the plane in polar coordinates, pi/8. The erfc reduction gives the same
  // number as a 1D integral.
  const auto f = [](double s, double z) { return std::exp(-s * s - z * z); };
  const auto inner = [](double s) { return InnerDomain{-kInfinity, -s, {}}; };
  const QuadResult r = quad_nested_2d(f, 0, kInfinity, inner, tight());
  CHECK(r.value == doctest::Approx(M_PI / 8).epsilon(1e-12));
  CHECK(std::abs(r.value - M_PI / 8) <= 1e-12);
  const QuadResult erfc_form = quad_adaptive_1d(
      [](double s) { return std::exp(-s * s) * std::sqrt(M_PI) / 2 * std::erfc(s); }, 0,
      kInfinity, tight());
  CHECK(std::abs(erfc_form.value - M_PI / 8) <= 1e-12);
  CHECK(std::abs(r.value - erfc_form.value) <= 1e-12);
  CHECK(r.error >= std::abs(r.value - M_PI / 8) - 1e-15);
}

TEST_CASE("nested: separable integrand equals the product of 1D results") {
  const auto gx = [](double x) { return std::exp(-x) * std::cos(x); };
  const auto gy = [](double y) { return y * y + std::sin(y); };
  const auto f = [&](double x, double y) { return gx(x) * gy(y); };
  const QuadResult r =
      quad_nested_2d(f, 0, kInfinity, [](double) { return InnerDomain{0, 2, {}}; }, tight());
  const double product =
      quad_adaptive_1d(gx, 0, kInfinity, tight()).value * quad_adaptive_1d(gy, 0, 2, tight()).value;
  CHECK(std::abs(r.value - product) <= 1e-10);
}

TEST_CASE("nested: zero integrand") {
  const QuadResult r = quad_nested_2d([](double, double) { return 0.0; }, 0, 1,
                                      [](double x) { return InnerDomain{-x, x, {}}; },
                                      QuadratureSpec{});
  CHECK(r.value == 0.0);
  CHECK(r.error == 0.0);
}

TEST_CASE("nested: log-singular inner edge with a moving upper limit") {
  // int_0^1 dx int_0^x ln(y) dy = int_0^1 (x ln x - x) dx = -3/4.
  const auto f = [](double, double y) { return std::log(y); };
  const auto inner = [](double x) {
    return InnerDomain{0, x, {Endpoint::LogSingular, Endpoint::Regular}};
  };
  const QuadResult r = quad_nested_2d(f, 0, 1, inner, tight());
  CHECK(std::abs(r.value + 0.75) <= 1e-10);
}

TEST_CASE("inner tolerances are tightened tenfold") {
  const QuadratureSpec inner = tightened_for_inner(QuadratureSpec{});
  CHECK(inner.abs_tol == doctest::Approx(1e-13));
  CHECK(inner.rel_tol == doctest::Approx(1e-9));
}
