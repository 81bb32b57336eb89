#pragma once

namespace udw::field {

enum class FieldKind { MasslessVacuum3p1 };

/// Tag for the field state. Its kind fixes every correlation function.
struct FieldState {
  FieldKind kind = FieldKind::MasslessVacuum3p1;
  bool stationary = true;

  static FieldState massless_vacuum() { return FieldState{}; }
};

/// -sigma^2 + xi^2 + r_perp^2 for a separation written in the detector frame.
double interval_sq_detector_frame(double sigma, double xi, double r_perp);

/// Vacuum Wightman function of a massless scalar in 3+1 at strictly
/// spacelike separation: 2 / ((2 pi)^2 s), i.e. 1 / (2 pi^2 s).
/// Throws DomainError for interval_sq <= 0.
double wightman_spacelike(double interval_sq, const FieldState& state);

}  // namespace udw::field
