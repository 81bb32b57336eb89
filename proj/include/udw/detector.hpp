#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace udw::detector {

enum class SmearingKind { Gaussian, Pointlike };

/// A qubit Unruh-DeWitt detector on an inertial trajectory.
///
/// Units are natural (c = hbar = 1). `ell` is ignored for pointlike
/// detectors. `lambda` is only a bookkeeping coupling: every deviation is
/// also reported as its lambda^2 coefficient.
struct DetectorConfig {
  double omega = 0.0;     // proper energy gap
  double lambda = 1.0;    // coupling strength
  double t_switch = 1.0;  // Gaussian switching timescale T
  double ell = 1.0;       // Gaussian smearing length
  double v = 0.0;         // centre-of-mass speed along x in the lab
  SmearingKind smearing_kind = SmearingKind::Gaussian;

  /// Throws std::invalid_argument (or InvalidFrameError for |v| >= 1).
  void validate() const;
};

using Matrix2c = Eigen::Matrix2cd;

/// sigma_z in the energy basis, excited state first: diag(1, -1).
Matrix2c sigma_z();
/// sigma^+ = |e><g|.
Matrix2c sigma_plus();
/// sigma^- = |g><e|.
Matrix2c sigma_minus();

/// Density operator of one detector in the {|e>, |g>} basis.
class QubitState {
 public:
  /// Throws std::invalid_argument unless rho is Hermitian, unit trace and
  /// positive semidefinite, each within 1e-12.
  explicit QubitState(const Matrix2c& rho);

  /// diag(p_excited, 1 - p_excited).
  static QubitState diagonal(double p_excited);
  static QubitState excited() { return diagonal(1.0); }
  static QubitState ground() { return diagonal(0.0); }
  /// |+><+| = 1/2 [[1, 1], [1, 1]].
  static QubitState plus();
  /// Pure state from the Bloch angles.
  static QubitState pure(double theta, double phi);

  const Matrix2c& rho() const noexcept { return rho_; }
  bool is_energy_diagonal() const noexcept;

 private:
  Matrix2c rho_;
};

/// Gaussian switching (1/sqrt(2 pi)) exp(-tau^2 / 2T^2). Note the prefactor
/// carries no 1/T.
double switching(double tau, const DetectorConfig& config);

/// Normalized isotropic Gaussian smearing in the detector rest frame.
/// Throws std::invalid_argument for pointlike detectors.
double smearing(const std::array<double, 3>& xbar, const DetectorConfig& config);

/// Real coefficient c of [mu(tau), mu(tau')] = i c sigma_z, i.e.
/// 2 sin(omega (tau - tau')).
double monopole_commutator_kernel(double tau, double tau_prime, double omega);

/// switching(tau) * smearing(xbar).
double spacetime_smearing(double tau, const std::array<double, 3>& xbar,
                          const DetectorConfig& config);

/// sigma_z rho - rho sigma_z.
Matrix2c commutator_with_sigma_z(const QubitState& state);

}  // namespace udw::detector
