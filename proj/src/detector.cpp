#include "udw/detector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "udw/geometry.hpp"

namespace udw::detector {

namespace {

constexpr double kStateTolerance = 1e-12;

}  // namespace

void DetectorConfig::validate() const {
  if (!std::isfinite(omega) || omega < 0.0) {
    throw std::invalid_argument("detector gap omega must be finite and >= 0");
  }
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("coupling lambda must be finite");
  }
  if (!std::isfinite(t_switch) || !(t_switch > 0.0)) {
    throw std::invalid_argument("switching timescale must be > 0");
  }
  if (smearing_kind == SmearingKind::Gaussian &&
      (!std::isfinite(ell) || !(ell > 0.0))) {
    throw std::invalid_argument("Gaussian smearing length must be > 0");
  }
  static_cast<void>(geometry::FrameSpec{v});
}

Matrix2c sigma_z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2c sigma_plus() {
  Matrix2c m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

Matrix2c sigma_minus() {
  Matrix2c m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

QubitState::QubitState(const Matrix2c& rho) : rho_(rho) {
  if (!rho.allFinite()) {
    throw std::invalid_argument("density matrix has non-finite entries");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > kStateTolerance) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix2c> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kStateTolerance) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
}

QubitState QubitState::diagonal(double p_excited) {
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = p_excited;
  m(1, 1) = 1.0 - p_excited;
  return QubitState(m);
}

QubitState QubitState::plus() {
  Matrix2c m;
  m << 0.5, 0.5, 0.5, 0.5;
  return QubitState(m);
}

QubitState QubitState::pure(double theta, double phi) {
  const Eigen::Vector2cd psi(std::cos(theta / 2.0),
                             std::polar(std::sin(theta / 2.0), phi));
  return QubitState(psi * psi.adjoint());
}

bool QubitState::is_energy_diagonal() const noexcept {
  return rho_(0, 1) == 0.0 && rho_(1, 0) == 0.0;
}

double switching(double tau, const DetectorConfig& config) {
  const double u = tau / config.t_switch;
  return std::numbers::inv_sqrtpi / std::numbers::sqrt2 * std::exp(-0.5 * u * u);
}

double smearing(const std::array<double, 3>& xbar, const DetectorConfig& config) {
  if (config.smearing_kind == SmearingKind::Pointlike) {
    throw std::invalid_argument(
        "pointlike smearing is a delta distribution; use the analytic "
        "pointlike evaluation instead of sampling it");
  }
  const double ell = config.ell;
  const double r2 = xbar[0] * xbar[0] + xbar[1] * xbar[1] + xbar[2] * xbar[2];
  const double norm =
      1.0 / (std::pow(2.0 * std::numbers::pi, 1.5) * ell * ell * ell);
  return norm * std::exp(-r2 / (2.0 * ell * ell));
}

double monopole_commutator_kernel(double tau, double tau_prime, double omega) {
  return 2.0 * std::sin(omega * (tau - tau_prime));
}

double spacetime_smearing(double tau, const std::array<double, 3>& xbar,
                          const DetectorConfig& config) {
  return switching(tau, config) * smearing(xbar, config);
}

Matrix2c commutator_with_sigma_z(const QubitState& state) {
  const Matrix2c sz = sigma_z();
  return sz * state.rho() - state.rho() * sz;
}

}  // namespace udw::detector
