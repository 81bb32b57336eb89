#include "udw/deviation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace udw::violation {

DeviationMatrix single_detector_deviation(const detector::QubitState& rho0,
                                          const ViolationResult& violation,
                                          double lambda) {
  if (!std::isfinite(lambda)) throw std::invalid_argument("coupling must be finite");
  return DeviationMatrix{detector::commutator_with_sigma_z(rho0) * violation.value, lambda};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

MultiDeviation multi_detector_deviation(std::span<const DetectorEntry> detectors,
                                        std::span<const ViolationResult> violations,
                                        double lambda_common) {
  const std::size_t n = detectors.size();
  if (n == 0) throw std::invalid_argument("at least one detector is required");
  if (n != violations.size()) {
    throw std::invalid_argument("detector and violation lists differ in length");
  }
  if (n > kMaxDetectors) {
    throw std::invalid_argument("at most " + std::to_string(kMaxDetectors) +
                                " detectors are supported, got " + std::to_string(n));
  }
  if (!std::isfinite(lambda_common)) {
    throw std::invalid_argument("coupling must be finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (detectors[i].first.v != violations[i].params.v) {
      throw std::invalid_argument("violation " + std::to_string(i) +
                                  " was computed for a different detector speed");
    }
  }

  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (violations[i].value == 0.0 || detectors[i].second.is_energy_diagonal()) continue;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Ones(1, 1);
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::MatrixXcd factor =
          j == i ? Eigen::MatrixXcd(detector::commutator_with_sigma_z(detectors[j].second) *
                                    violations[i].value)
                 : Eigen::MatrixXcd(detectors[j].second.rho());
      term = kron(term, factor);
    }
    total += term;
  }
  return MultiDeviation{std::move(total), lambda_common};
}

}  // namespace udw::violation
