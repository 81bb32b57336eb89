#pragma once

namespace udw::numerics {

/// Exponential integral Ei(x), principal value for x > 0 and -E1(-x) for
/// x < 0. Throws DomainError at the pole (|x| < 1e-300).
///
/// Negative arguments use the power series for |x| <= 1 and the E1
/// continued fraction beyond; positive arguments use the power series up to
/// x = 40 and the asymptotic series past that.
double expint_ei(double x);

/// E1(z) for z > 0.
double expint_e1(double z);

}  // namespace udw::numerics
