#include "udw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "udw/errors.hpp"

namespace udw::geometry {

namespace {

void check_speed(double v) {
  if (!std::isfinite(v) || !(std::abs(v) < 1.0)) {
    throw InvalidFrameError("frame speed must satisfy |v| < 1, got " +
                            std::to_string(v));
  }
}

constexpr double kNullTolerance = 1e-12;

}  // namespace

FrameSpec::FrameSpec(double v) : v_(v) { check_speed(v); }

double FrameSpec::gamma() const noexcept {
  return 1.0 / std::sqrt((1.0 - v_) * (1.0 + v_));
}

void SpacetimeEvent::validate() const {
  if (!std::isfinite(t) || !std::isfinite(x) || !std::isfinite(y) ||
      !std::isfinite(z)) {
    throw std::invalid_argument("spacetime event has non-finite coordinates");
  }
}

const char* to_string(IntervalClass c) noexcept {
  switch (c) {
    case IntervalClass::Timelike:
      return "timelike";
    case IntervalClass::Null:
      return "null";
    case IntervalClass::Spacelike:
      return "spacelike";
  }
  return "unknown";
}

double gamma(double v) {
  check_speed(v);
  // (1 - v)(1 + v) keeps full relative precision as |v| -> 1.
  return 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
}

double boost_delta_t(double delta_tau, double delta_xbar, double v) {
  return gamma(v) * (delta_tau + v * delta_xbar);
}

SpacetimeEvent to_frame(const SpacetimeEvent& e, const FrameSpec& target) {
  if (e.frame == target) return e;

  // Into the lab, then out to the target frame.
  const double v1 = e.frame.v();
  const double g1 = e.frame.gamma();
  const double t_lab = g1 * (e.t + v1 * e.x);
  const double x_lab = g1 * (e.x + v1 * e.t);

  const double v2 = target.v();
  const double g2 = target.gamma();
  return SpacetimeEvent{g2 * (t_lab - v2 * x_lab), g2 * (x_lab - v2 * t_lab),
                        e.y, e.z, target};
}

double interval_sq(const SpacetimeEvent& a, const SpacetimeEvent& b) {
  const SpacetimeEvent bb = to_frame(b, a.frame);
  const double dt = a.t - bb.t;
  const double dx = a.x - bb.x;
  const double dy = a.y - bb.y;
  const double dz = a.z - bb.z;
  return -dt * dt + dx * dx + dy * dy + dz * dz;
}

IntervalClass classify_interval(const SpacetimeEvent& a,
                                const SpacetimeEvent& b) {
  a.validate();
  b.validate();
  const SpacetimeEvent bb = to_frame(b, a.frame);
  const double dt = a.t - bb.t;
  const double dx = a.x - bb.x;
  const double dy = a.y - bb.y;
  const double dz = a.z - bb.z;
  const double time2 = dt * dt;
  const double space2 = dx * dx + dy * dy + dz * dz;
  const double s2 = space2 - time2;
  const double band = kNullTolerance * std::max(1.0, time2 + space2);
  if (std::abs(s2) <= band) return IntervalClass::Null;
  return s2 < 0.0 ? IntervalClass::Timelike : IntervalClass::Spacelike;
}

bool in_s_leq(const SpacetimeEvent& a, const SpacetimeEvent& b,
              const FrameSpec& frame_tau, const FrameSpec& frame_t) {
  if (frame_tau == frame_t) return false;
  if (classify_interval(a, b) != IntervalClass::Spacelike) return false;

  const SpacetimeEvent a_tau = to_frame(a, frame_tau);
  const SpacetimeEvent b_tau = to_frame(b, frame_tau);
  if (!(a_tau.t - b_tau.t > 0.0)) return false;

  const SpacetimeEvent a_t = to_frame(a, frame_t);
  const SpacetimeEvent b_t = to_frame(b, frame_t);
  return a_t.t - b_t.t <= 0.0;
}

}  // namespace udw::geometry
