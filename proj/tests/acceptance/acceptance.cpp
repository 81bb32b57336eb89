// Acceptance checks, one per criterion. Usage: acceptance [N ...]
// With no arguments every criterion runs. Each prints one line
//   criterion N: PASS|FAIL  <summary>  (<seconds> s, budget <seconds> s)
// and the process exits non-zero if any selected criterion failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "udw/deviation.hpp"
#include "udw/errors.hpp"
#include "udw/geometry.hpp"
#include "udw/numerics/expint.hpp"
#include "udw/numerics/monte_carlo.hpp"
#include "udw/numerics/quadrature.hpp"
#include "udw/violation.hpp"

namespace {

using namespace udw;
using cd = std::complex<double>;
using detector::DetectorConfig;
using detector::Matrix2c;
using detector::QubitState;
using violation::ViolationResult;

struct Verdict {
  bool pass;
  std::string summary;
};

const field::FieldState kVacuum = field::FieldState::massless_vacuum();

DetectorConfig gaussian(double v, double t_switch, double ell, double omega) {
  DetectorConfig c;
  c.v = v;
  c.t_switch = t_switch;
  c.ell = ell;
  c.omega = omega;
  return c;
}

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Verdict pointlike_zero() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int nonzero = 0;
  for (int i = 0; i < 100; ++i) {
    DetectorConfig c = gaussian(0.999 * (2 * u(rng) - 1), 0.01 + 100 * u(rng), 1.0, 100 * u(rng));
    c.smearing_kind = detector::SmearingKind::Pointlike;
    const ViolationResult r = violation::pointlike_trace_e(c);
    nonzero += r.value != cd(0, 0) || r.error_estimate != 0.0;
  }
  return {nonzero == 0, std::to_string(100 - nonzero) + "/100 random pointlike sets exactly 0"};
}

Verdict comoving_zero() {
  std::vector<ViolationResult> results;
  const DetectorConfig rest = gaussian(0.0, 1.0, 0.1, 1.0);
  results.push_back(violation::trace_e_reference_mc(rest, kVacuum, geometry::FrameSpec::lab(),
                                                    10'000'000, 1));
  results.push_back(violation::trace_e_reduced3d(rest, kVacuum));
  results.push_back(violation::trace_e_ei_2d(rest, kVacuum));
  results.push_back(violation::trace_e_dimensionless(0.0, 10.0, 1.0));
  const DetectorConfig moving = gaussian(0.8, 1.0, 1.0, 1.0);
  results.push_back(violation::trace_e_reference_mc(moving, kVacuum, geometry::FrameSpec{0.8},
                                                    10'000'000, 1));
  int nonzero = 0;
  for (const auto& r : results) nonzero += r.value != cd(0, 0);
  return {nonzero == 0, std::to_string(results.size() - nonzero) + "/" +
                            std::to_string(results.size()) +
                            " comoving evaluations (mc, reduced3d, ei2d, dimensionless, "
                            "mc against own rest frame) exactly 0"};
}

struct GridPoint {
  double v, ratio, wt;
  ViolationResult reduced, ei, dim, mc;
};

// The criterion-3 grid, with T = 1, ell = 1 / ratio, Omega = wt.
std::vector<GridPoint> evaluate_grid() {
  std::vector<GridPoint> points;
  for (double v : {0.3, 0.6, 0.9}) {
    for (double ratio : {1.0, 10.0}) {
      for (double wt : {0.5, 2.0}) {
        const DetectorConfig c = gaussian(v, 1.0, 1.0 / ratio, wt);
        points.push_back({v, ratio, wt, violation::trace_e_reduced3d(c, kVacuum),
                          violation::trace_e_ei_2d(c, kVacuum),
                          violation::trace_e_dimensionless(v, ratio, wt),
                          violation::trace_e_reference_mc(c, kVacuum, geometry::FrameSpec::lab(),
                                                          10'000'000, 20240601)});
      }
    }
  }
  return points;
}

Verdict path_equivalence() {
  double worst_pair = 0.0;
  double worst_sigma = 0.0;
  std::string failures;
  for (const GridPoint& p : evaluate_grid()) {
    const ViolationResult* closed[] = {&p.reduced, &p.ei, &p.dim};
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double a = closed[i]->value.imag(), b = closed[j]->value.imag();
        const double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
        worst_pair = std::max(worst_pair, rel);
        ok = ok && rel <= 1e-4;
      }
      const double combined = std::hypot(p.mc.error_estimate, closed[i]->error_estimate);
      const double sigmas = std::abs(p.mc.value.imag() - closed[i]->value.imag()) / combined;
      worst_sigma = std::max(worst_sigma, sigmas);
      ok = ok && sigmas <= 3.0;
    }
    if (!ok) failures += fmt(" (v=%g T/ell=%g OmegaT=%g)", p.v, p.ratio, p.wt);
  }
  return {failures.empty(),
          fmt("12 grid points; worst pairwise closed-form rel diff %.2e, worst MC deviation "
              "%.2f sigma (1e7 samples)",
              worst_pair, worst_sigma) +
              (failures.empty() ? "" : "; failing:" + failures)};
}

Verdict purely_imaginary() {
  int bad = 0;
  int checked = 0;
  double worst = 0.0;
  for (const GridPoint& p : evaluate_grid()) {
    for (const ViolationResult* r : {&p.reduced, &p.ei, &p.dim, &p.mc}) {
      ++checked;
      bad += std::abs(r->value.real()) > r->error_estimate;
      if (r->error_estimate > 0) worst = std::max(worst, std::abs(r->value.real()) / r->error_estimate);
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) +
                        " results with |Re| <= error estimate" +
                        fmt(" (max |Re|/err %.2f)", worst)};
}

Verdict decay() {
  const double ratios[] = {1.0, 10.0, 100.0, 1000.0};
  std::vector<double> m;
  for (double r : ratios) {
    m.push_back(std::abs(violation::trace_e_dimensionless(0.9, r, 1.0).value.imag()));
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] > m[peak]) peak = i;
  }
  bool decreasing = true;
  for (std::size_t i = peak + 1; i < m.size(); ++i) decreasing = decreasing && m[i] < m[i - 1];
  const double last_fraction = m.back() / m[peak];
  std::ostringstream s;
  s.precision(6);
  s << "|Im| at v=0.9, OmegaT=1, T/ell=1,10,100,1000: " << m[0] << ", " << m[1] << ", " << m[2]
    << ", " << m[3] << "; peak at T/ell=" << ratios[peak]
    << (peak + 1 == m.size() ? ", the largest T/ell"
        : decreasing         ? ", decreasing after it"
                             : ", not decreasing after it")
    << "; last/max = " << last_fraction << " (required <= 1e-6)";
  return {decreasing && last_fraction <= 1e-6, s.str()};
}

Verdict diagonal_cancellation() {
  const ViolationResult value =
      violation::trace_e_dimensionless(0.9, 10.0, 1.0);
  int nonzero = 0;
  int checked = 0;
  for (double p : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    nonzero += violation::single_detector_deviation(QubitState::diagonal(p), value, 0.3)
                   .coeff.norm() != 0.0;
    ++checked;
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    for (double p : {0.0, 0.3, 1.0}) {
      std::vector<violation::DetectorEntry> dets;
      for (std::size_t i = 0; i < n; ++i) {
        dets.emplace_back(gaussian(0.9, 1.0, 0.1, 1.0), QubitState::diagonal(p * (i + 1) / n));
      }
      const std::vector<ViolationResult> values(n, value);
      nonzero += violation::multi_detector_deviation(dets, values, 0.3).coeff.norm() != 0.0;
      ++checked;
    }
  }
  return {nonzero == 0,
          std::to_string(checked - nonzero) + "/" + std::to_string(checked) +
              " energy-diagonal inputs (single, and N=1..3) give exactly the zero matrix"};
}

// Dense reference: sigma_z on detector i and the product state built entry by
// entry from basis-index bits.
Eigen::MatrixXcd brute_force(const std::vector<Matrix2c>& rhos, const std::vector<cd>& values) {
  const int n = static_cast<int>(rhos.size());
  const int dim = 1 << n;
  auto bit = [n](int index, int k) { return (index >> (n - 1 - k)) & 1; };
  Eigen::MatrixXcd rho(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      cd e = 1.0;
      for (int k = 0; k < n; ++k) e *= rhos[k](bit(r, k), bit(c, k));
      rho(r, c) = e;
    }
  }
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) z(r, r) = bit(r, i) == 0 ? 1.0 : -1.0;
    total += (z * rho - rho * z) * values[i];
  }
  return total;
}

Verdict deviation_structure() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1e-2, 1e-2);
  double worst_herm = 0, worst_trace = 0, worst_brute = 0;
  int states = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 3;
    std::vector<violation::DetectorEntry> dets;
    std::vector<ViolationResult> vals;
    std::vector<Matrix2c> rhos;
    std::vector<cd> values;
    for (int i = 0; i < n; ++i) {
      Matrix2c rho;
      do {
        rho = testing::random_qubit_rho(rng);
      } while (rho(0, 1) == cd(0, 0));
      rhos.push_back(rho);
      dets.emplace_back(gaussian(0.5, 1, 1, 1), QubitState{rho});
      ViolationResult r;
      r.value = cd(0.0, u(rng));
      r.params.v = 0.5;
      vals.push_back(r);
      values.push_back(r.value);
      ++states;
    }
    const auto single = violation::single_detector_deviation(dets[0].second, vals[0], 0.1);
    worst_herm = std::max(worst_herm, (single.coeff - single.coeff.adjoint()).norm());
    worst_trace = std::max(worst_trace, std::abs(single.coeff.trace()));
    const auto multi = violation::multi_detector_deviation(dets, vals, 0.1);
    worst_herm = std::max(worst_herm, (multi.coeff - multi.coeff.adjoint()).norm());
    worst_trace = std::max(worst_trace, std::abs(multi.coeff.trace()));
    worst_brute = std::max(worst_brute, (multi.coeff - brute_force(rhos, values)).norm());
  }
  const bool pass = worst_herm <= 1e-10 && worst_trace <= 1e-10 && worst_brute <= 1e-12;
  return {pass, fmt("%g random non-diagonal states; max Hermiticity defect %.1e, max |trace| "
                    "%.1e, ", states, worst_herm, worst_trace) +
                    fmt("max brute-force difference %.1e (N=1,2,3)", worst_brute)};
}

Verdict numerics_battery() {
  // Ei against the extended-precision oracles.
  double worst_ei = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -std::pow(10.0, -8.0 + (std::log10(700.0) + 8.0) * i / 999.0);
    const double expected = testing::ei_oracle(x);
    worst_ei = std::max(worst_ei, std::abs(numerics::expint_ei(x) - expected) / std::abs(expected));
  }
  // Quadrature battery.
  using numerics::kInfinity;
  const numerics::EndpointSpec log_left{numerics::Endpoint::LogSingular,
                                        numerics::Endpoint::Regular};
  const double gauss =
      numerics::quad_adaptive_1d([](double x) { return std::exp(-x * x); }, 0, kInfinity, {}).value;
  const double logx =
      numerics::quad_adaptive_1d([](double x) { return std::log(x); }, 0, 1, {}, log_left).value;
  const double damped = numerics::quad_adaptive_1d(
                            [](double x) { return std::exp(-x) * std::sin(x); }, 0, kInfinity, {})
                            .value;
  numerics::QuadratureSpec tight;
  tight.abs_tol = 1e-14;
  tight.rel_tol = 1e-13;
  const double wedge = numerics::quad_nested_2d(
                           [](double s, double z) { return std::exp(-s * s - z * z); }, 0,
                           kInfinity,
                           [](double s) { return numerics::InnerDomain{-kInfinity, -s, {}}; },
                           tight)
                           .value;
  const double erfc_form = numerics::quad_adaptive_1d(
                               [](double s) {
                                 return std::exp(-s * s) * std::sqrt(M_PI) / 2 * std::erfc(s);
                               },
                               0, kInfinity, tight)
                               .value;
  const bool quad_ok = std::abs(gauss - std::sqrt(M_PI) / 2) <= 1e-12 &&
                       std::abs(logx + 1) <= 1e-10 && std::abs(damped - 0.5) <= 1e-12 &&
                       std::abs(wedge - erfc_form) <= 1e-12 && std::abs(wedge - M_PI / 8) <= 1e-12;
  // Monte-Carlo known integrals over 100 seeds.
  const numerics::GaussianProductSampler sampler({0.0}, {1.0});
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto e = numerics::mc_integrate(
        [](std::span<const double> x) { return cd(x[0] * x[0]); }, sampler,
        [](std::span<const double>) { return true; }, 100000, seed);
    inside += std::abs(e.mean.real() - 1.0) <= 3 * e.std_error;
  }
  const bool pass = worst_ei <= 1e-13 && quad_ok && inside >= 99;
  return {pass, fmt("Ei max rel error %.2e at 1000 points; quadrature battery ", worst_ei) +
                    (quad_ok ? "within tolerance" : "OUT OF TOLERANCE") +
                    fmt("; MC within 3 sigma in %g/100 seeds", inside)};
}

Verdict geometry_suite() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> coord(-10, 10), unit(0, 1);
  auto frame = [&] { return geometry::FrameSpec{0.95 * (2 * unit(rng) - 1)}; };
  int class_flips = 0, order_flips = 0, pairs = 0;
  const geometry::IntervalClass classes[] = {geometry::IntervalClass::Timelike,
                                             geometry::IntervalClass::Null,
                                             geometry::IntervalClass::Spacelike};
  for (int i = 0; i < 15000; ++i) {
    const auto wanted = classes[i % 3];
    const double x = coord(rng), y = coord(rng), z = coord(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    const double sign = unit(rng) < 0.5 ? -1 : 1;
    const double dt = wanted == geometry::IntervalClass::Timelike ? sign * r * (1.05 + 3 * unit(rng))
                      : wanted == geometry::IntervalClass::Null   ? sign * r
                                                                  : sign * r * 0.95 * unit(rng);
    const geometry::FrameSpec f = frame();
    const geometry::SpacetimeEvent b{coord(rng), coord(rng), coord(rng), coord(rng), f};
    const geometry::SpacetimeEvent a{b.t + dt, b.x + x, b.y + y, b.z + z, f};
    const geometry::FrameSpec boost = frame();
    const auto a2 = geometry::to_frame(a, boost);
    const auto b2 = geometry::to_frame(b, boost);
    class_flips += geometry::classify_interval(a, b) != wanted;
    class_flips += geometry::classify_interval(a2, b2) != wanted;
    if (wanted != geometry::IntervalClass::Spacelike) {
      order_flips += ((a.t - b.t) > 0) != ((a2.t - b2.t) > 0);
    }
    ++pairs;
  }
  return {class_flips == 0 && order_flips == 0,
          std::to_string(pairs) + " random pairs; " + std::to_string(class_flips) +
              " class changes under boosts, " + std::to_string(order_flips) +
              " causal order flips"};
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Verdict()> check;
};

const Criterion kCriteria[] = {
    {"exact pointlike zero", 1, pointlike_zero},
    {"exact comoving zero", 1, comoving_zero},
    {"path equivalence", 600, path_equivalence},
    {"purely imaginary", 600, purely_imaginary},
    {"decay in T/ell", 300, decay},
    {"diagonal-state cancellation", 1, diagonal_cancellation},
    {"deviation structure", 30, deviation_structure},
    {"numerics battery", 120, numerics_battery},
    {"geometry property suite", 10, geometry_suite},
};

bool run_criterion(int index) {
  const Criterion& c = kCriteria[index - 1];
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = c.check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_budget = seconds <= c.budget_seconds;
  const bool pass = v.pass && in_budget;
  std::printf("criterion %d: %s  %s: %s%s  (%.2f s, budget %g s)\n", index,
              pass ? "PASS" : "FAIL", c.name, v.summary.c_str(),
              in_budget ? "" : "; over runtime budget", seconds, c.budget_seconds);
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "usage: %s [criterion 1-9 ...]\n", argv[0]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (int i = 1; i <= 9; ++i) selected.push_back(i);
  }
  bool all = true;
  for (int n : selected) all = run_criterion(n) && all;
  return all ? 0 : 1;
}
