#pragma once

// Minkowski interval algebra for inertial frames boosted along x.
// Natural units, c = 1, signature (-,+,+,+).

namespace udw::geometry {

/// An inertial foliation, given by its boost speed along x relative to the
/// lab frame.
class FrameSpec {
 public:
  /// The lab frame (v = 0).
  constexpr FrameSpec() = default;

  /// Throws InvalidFrameError unless |v| < 1 and v is finite.
  explicit FrameSpec(double v);

  static FrameSpec lab() { return FrameSpec{}; }

  double v() const noexcept { return v_; }
  double gamma() const noexcept;

  friend bool operator==(const FrameSpec&, const FrameSpec&) = default;

 private:
  double v_ = 0.0;
};

/// A point of 3+1 Minkowski space carried in an explicit frame.
struct SpacetimeEvent {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  FrameSpec frame;

  /// Throws std::invalid_argument if any coordinate is not finite.
  void validate() const;
};

enum class IntervalClass { Timelike, Null, Spacelike };

const char* to_string(IntervalClass c) noexcept;

/// Lorentz factor 1/sqrt(1 - v^2). Throws InvalidFrameError for |v| >= 1.
double gamma(double v);

/// Lab-frame time interval between two events separated by (delta_tau,
/// delta_xbar) in a frame moving at speed v: gamma * (delta_tau + v * delta_xbar).
double boost_delta_t(double delta_tau, double delta_xbar, double v);

/// Re-expresses an event in another frame. Both frames are boosts along x of
/// the lab, so the composition is exact up to rounding.
SpacetimeEvent to_frame(const SpacetimeEvent& e, const FrameSpec& target);

/// -dt^2 + dx^2 + dy^2 + dz^2, with b converted into a's frame.
double interval_sq(const SpacetimeEvent& a, const SpacetimeEvent& b);

/// Classifies the separation of a and b. The null band is
/// 1e-12 * max(1, dt^2 + |dx|^2).
IntervalClass classify_interval(const SpacetimeEvent& a, const SpacetimeEvent& b);

/// True iff (a, b) belongs to the order-flipping region between two
/// foliations: the pair is spacelike, a is strictly later than b in
/// frame_tau, and a is not later than b in frame_t.
bool in_s_leq(const SpacetimeEvent& a, const SpacetimeEvent& b,
              const FrameSpec& frame_tau, const FrameSpec& frame_t);

}  // namespace udw::geometry
