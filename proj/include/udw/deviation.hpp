#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "udw/detector.hpp"
#include "udw/violation.hpp"

namespace udw::violation {

/// Second-order difference between the detector states evolved with the lab
/// time ordering and with the detector's proper-time ordering:
/// rho^t - rho^tau = lambda^2 * coeff + O(lambda^3).
struct DeviationMatrix {
  detector::Matrix2c coeff;
  double lambda = 0.0;

  detector::Matrix2c full() const { return lambda * lambda * coeff; }
};

/// coeff = [sigma_z, rho0] * Tr(rho_phi E).
DeviationMatrix single_detector_deviation(const detector::QubitState& rho0,
                                          const ViolationResult& violation,
                                          double lambda);

/// The same quantity for N detectors starting in a product state. Detector 0
/// is the leftmost Kronecker factor.
struct MultiDeviation {
  Eigen::MatrixXcd coeff;
  double lambda = 0.0;

  Eigen::MatrixXcd full() const { return lambda * lambda * coeff; }
};

inline constexpr std::size_t kMaxDetectors = 6;

using DetectorEntry = std::pair<detector::DetectorConfig, detector::QubitState>;

/// sum_i (rho_0 (x) ... (x) [sigma_z, rho_i] Tr(rho_phi E_i) (x) ... (x) rho_{N-1}).
/// Throws std::invalid_argument on mismatched lengths, an empty list, more
/// than kMaxDetectors detectors, or a violation whose speed differs from its
/// detector's.
MultiDeviation multi_detector_deviation(std::span<const DetectorEntry> detectors,
                                        std::span<const ViolationResult> violations,
                                        double lambda_common);

/// Kronecker product a (x) b.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace udw::violation
