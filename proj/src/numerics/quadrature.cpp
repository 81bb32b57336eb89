#include "udw/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "udw/errors.hpp"

namespace udw::numerics {

namespace {

// QUADPACK qk15 abscissae and weights. Kronrod nodes 1, 3, 5 (and the centre)
// carry the 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUnderflow = std::numeric_limits<double>::min();

struct Panel {
  double a;
  double b;
  double value;
  double error;
  // Part of `error` that is only rounding (50 eps times the integral of |f|);
  // subdividing cannot reduce it.
  double roundoff;
  double inner_error;
  bool inner_converged;

  double reducible() const { return error - roundoff; }
};

// Only the reducible outer rule error drives subdivision: splitting a panel
// cannot shrink its rounding floor or the error of the inner estimates.
bool operator<(const Panel& lhs, const Panel& rhs) {
  return lhs.reducible() < rhs.reducible();
}

// One 15-point panel on [a, b] of an estimate-valued integrand g.
template <typename G>
Panel gauss_kronrod_15(const G& g, double a, double b, long& evaluations) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 15> fv{};
  std::array<double, 15> ev{};
  bool inner_ok = true;
  auto eval = [&](int slot, double x) {
    const QuadResult r = g(x);
    if (!std::isfinite(r.value)) {
      throw std::domain_error("integrand is not finite at x = " + std::to_string(x));
    }
    fv[slot] = r.value;
    ev[slot] = r.error;
    inner_ok = inner_ok && r.converged;
  };
  eval(14, centre);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    eval(2 * j, centre - dx);
    eval(2 * j + 1, centre + dx);
  }
  evaluations += 15;

  double resk = fv[14] * kWgk[7];
  double resg = fv[14] * kWg[3];
  double resabs = std::abs(resk);
  double inner = ev[14] * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[2 * j] + fv[2 * j + 1];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
    inner += kWgk[j] * (ev[2 * j] + ev[2 * j + 1]);
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[14] - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv[2 * j] - reskh) + std::abs(fv[2 * j + 1] - reskh));
  }

  const double habs = std::abs(half);
  resabs *= habs;
  resasc *= habs;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  double roundoff = 0.0;
  if (resabs > kUnderflow / (50.0 * kEps)) {
    roundoff = 50.0 * kEps * resabs;
    err = std::max(roundoff, err);
  }
  return Panel{a, b, resk * half, err, std::min(roundoff, err), std::abs(inner * half),
               inner_ok};
}

// Wraps g so that integration over the returned finite interval equals the
// integral of g over [a, b] with the requested endpoint treatment.
struct MappedIntegrand {
  enum class Map { Identity, RightInfinite, LeftInfinite, BothInfinite,
                   LeftLog, RightLog, BothLog };

  const EstimateIntegrand* g;
  Map map;
  double a;
  double b;

  QuadResult operator()(double u) const {
    double x = 0.0;
    double jac = 1.0;
    const double h = b - a;
    switch (map) {
      case Map::Identity:
        return (*g)(u);
      case Map::RightInfinite: {
        const double w = 1.0 - u;
        x = a + u / w;
        jac = 1.0 / (w * w);
        break;
      }
      case Map::LeftInfinite: {
        const double w = 1.0 - u;
        x = b - u / w;
        jac = 1.0 / (w * w);
        break;
      }
      case Map::BothInfinite: {
        // u in (-1, 1)
        const double w = 1.0 - u * u;
        x = u / w;
        jac = (1.0 + u * u) / (w * w);
        break;
      }
      case Map::LeftLog:
        x = a + h * u * u * u;
        jac = 3.0 * h * u * u;
        break;
      case Map::RightLog: {
        const double w = 1.0 - u;
        x = b - h * w * w * w;
        jac = 3.0 * h * w * w;
        break;
      }
      case Map::BothLog: {
        const double u2 = u * u;
        x = a + h * u2 * u * (10.0 - 15.0 * u + 6.0 * u2);
        jac = 30.0 * h * u2 * (1.0 - u) * (1.0 - u);
        break;
      }
    }
    if (jac == 0.0 || !std::isfinite(x)) return QuadResult{};
    QuadResult r = (*g)(x);
    r.value *= jac;
    r.error *= std::abs(jac);
    return r;
  }
};

QuadResult adaptive_core(const EstimateIntegrand& g, double a, double b,
                         const QuadratureSpec& spec, EndpointSpec ends) {
  spec.validate();
  if (std::isnan(a) || std::isnan(b)) {
    throw std::invalid_argument("integration limits must not be NaN");
  }
  if (a == b) return QuadResult{};
  if (a > b) {
    QuadResult r = adaptive_core(g, b, a, spec, EndpointSpec{ends.right, ends.left});
    r.value = -r.value;
    return r;
  }

  using Map = MappedIntegrand::Map;
  const bool left_inf = std::isinf(a);
  const bool right_inf = std::isinf(b);
  const bool left_log = ends.left == Endpoint::LogSingular;
  const bool right_log = ends.right == Endpoint::LogSingular;
  if ((left_inf && left_log) || (right_inf && right_log)) {
    throw std::invalid_argument("a log-singular endpoint must be finite");
  }

  MappedIntegrand mapped{&g, Map::Identity, a, b};
  double lo = a;
  double hi = b;
  if (left_inf && right_inf) {
    mapped.map = Map::BothInfinite;
    lo = -1.0;
    hi = 1.0;
  } else if (right_inf) {
    mapped.map = Map::RightInfinite;
    lo = 0.0;
    hi = 1.0;
  } else if (left_inf) {
    mapped.map = Map::LeftInfinite;
    lo = 0.0;
    hi = 1.0;
  } else if (left_log && right_log) {
    mapped.map = Map::BothLog;
    lo = 0.0;
    hi = 1.0;
  } else if (left_log) {
    mapped.map = Map::LeftLog;
    lo = 0.0;
    hi = 1.0;
  } else if (right_log) {
    mapped.map = Map::RightLog;
    lo = 0.0;
    hi = 1.0;
  }

  long evaluations = 0;
  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod_15(mapped, lo, hi, evaluations));

  // Convergence is judged on the reducible error; the reported error still
  // includes the rounding floor.
  double rule_error = 0.0;
  auto totals = [&heap, &rule_error]() {
    double value = 0.0;
    double error = 0.0;
    bool inner_ok = true;
    rule_error = 0.0;
    for (const Panel& p : heap) {
      value += p.value;
      rule_error += p.reducible();
      error += p.error + p.inner_error;
      inner_ok = inner_ok && p.inner_converged;
    }
    return QuadResult{value, error, inner_ok, 0};
  };

  QuadResult total = totals();
  int subdivisions = 1;
  while (rule_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total.value))) {
    if (subdivisions >= spec.max_subdivisions) {
      total.converged = false;
      break;
    }
    std::pop_heap(heap.begin(), heap.end());
    const Panel worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a < 4.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      // The panel cannot be split any further in double precision.
      total.converged = false;
      break;
    }
    heap.back() = gauss_kronrod_15(mapped, worst.a, mid, evaluations);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(gauss_kronrod_15(mapped, mid, worst.b, evaluations));
    std::push_heap(heap.begin(), heap.end());
    ++subdivisions;
    total = totals();
  }
  total.evaluations = evaluations;
  return total;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be > 0");
  }
  if (max_subdivisions < 1) {
    throw std::invalid_argument("max_subdivisions must be >= 1");
  }
  if (!(truncation_sigma >= 6.0)) {
    throw std::invalid_argument("truncation_sigma must be >= 6");
  }
}

QuadResult integrate_adaptive(const Integrand1D& f, double a, double b,
                              const QuadratureSpec& spec, EndpointSpec ends) {
  const EstimateIntegrand g = [&f](double x) { return QuadResult{f(x), 0.0, true, 1}; };
  return adaptive_core(g, a, b, spec, ends);
}

QuadResult integrate_adaptive(const EstimateIntegrand& f, double a, double b,
                              const QuadratureSpec& spec, EndpointSpec ends) {
  return adaptive_core(f, a, b, spec, ends);
}

QuadratureSpec tightened_for_inner(const QuadratureSpec& spec) {
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol * 0.1;
  inner.rel_tol = spec.rel_tol * 0.1;
  return inner;
}

const QuadResult& require_converged(const QuadResult& r, const char* what) {
  if (!r.converged) {
    throw NonConvergenceError(std::string(what) + ": adaptive quadrature did not converge",
                              r.value, r.error);
  }
  return r;
}

QuadResult quad_adaptive_1d(const Integrand1D& f, double a, double b,
                            const QuadratureSpec& spec, EndpointSpec ends) {
  QuadResult r = integrate_adaptive(f, a, b, spec, ends);
  require_converged(r, "quad_adaptive_1d");
  return r;
}

QuadResult quad_nested_2d(const Integrand2D& f, double outer_lo, double outer_hi,
                          const InnerDomainOf& inner_domain,
                          const QuadratureSpec& spec) {
  const QuadratureSpec inner_spec = tightened_for_inner(spec);
  const EstimateIntegrand outer = [&](double x) {
    const InnerDomain d = inner_domain(x);
    return integrate_adaptive([&](double y) { return f(x, y); }, d.lo, d.hi,
                              inner_spec, d.ends);
  };
  QuadResult r = integrate_adaptive(outer, outer_lo, outer_hi, spec);
  require_converged(r, "quad_nested_2d");
  return r;
}

}  // namespace udw::numerics
