#include "udw/numerics/expint.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udw/errors.hpp"

namespace udw::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 1000;

// gamma + ln|x| + sum_{k>=1} x^k / (k k!)
double ei_series(double x) {
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= x / k;
    const double contribution = term / k;
    sum += contribution;
    if (std::abs(contribution) < kEps * std::abs(sum)) break;
  }
  return std::numbers::egamma + std::log(std::abs(x)) + sum;
}

// Modified Lentz evaluation of the E1 continued fraction, z > 1.
double e1_continued_fraction(double z) {
  double b = z + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h * std::exp(-z);
  }
  throw NonConvergenceError("E1 continued fraction did not converge", h * std::exp(-z),
                            std::abs(h * std::exp(-z)));
}

// e^x / x * sum k! / x^k, truncated at the smallest term.
double ei_asymptotic(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    const double previous = term;
    term *= k / x;
    if (term < kEps || term > previous) break;
    sum += term;
  }
  return std::exp(x) * sum / x;
}

}  // namespace

double expint_e1(double z) {
  if (!(z > 0.0)) {
    throw DomainError("E1 requires a positive argument, got " + std::to_string(z));
  }
  if (std::isinf(z)) return 0.0;
  if (z <= 1.0) return -ei_series(-z);
  return e1_continued_fraction(z);
}

double expint_ei(double x) {
  if (std::isnan(x)) return x;
  if (std::abs(x) < kTiny) {
    throw DomainError("Ei has a logarithmic pole at 0");
  }
  if (x < 0.0) return -expint_e1(-x);
  if (std::isinf(x)) return x;
  if (x <= 40.0) return ei_series(x);
  return ei_asymptotic(x);
}

}  // namespace udw::numerics
