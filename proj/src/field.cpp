#include "udw/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "udw/errors.hpp"

namespace udw::field {

double interval_sq_detector_frame(double sigma, double xi, double r_perp) {
  if (r_perp < 0.0) {
    throw std::invalid_argument("transverse separation must be >= 0");
  }
  return -sigma * sigma + xi * xi + r_perp * r_perp;
}

double wightman_spacelike(double interval_sq, const FieldState& state) {
  if (state.kind != FieldKind::MasslessVacuum3p1) {
    throw std::invalid_argument("unsupported field state");
  }
  if (!(interval_sq > 0.0)) {
    throw DomainError(
        "spacelike Wightman closed form requires a positive squared "
        "interval, got " +
        std::to_string(interval_sq));
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return 2.0 / (two_pi * two_pi * interval_sq);
}

}  // namespace udw::field
