#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace udw::numerics {

struct McEstimate {
  std::complex<double> mean;
  /// sqrt((Var Re + Var Im) / samples), sample variances.
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t accepted = 0;
  std::uint64_t seed = 0;
};

/// Independent normal coordinates with the given means and standard
/// deviations. Draw `index` for `seed` depends on nothing else, so the
/// sample set is the same however it is split across workers.
class GaussianProductSampler {
 public:
  GaussianProductSampler(std::vector<double> means, std::vector<double> sigmas);

  std::size_t dimension() const noexcept { return means_.size(); }

  void draw(std::uint64_t seed, std::uint64_t index, std::span<double> out) const;

  /// Joint probability density at x.
  double density(std::span<const double> x) const;

 private:
  std::vector<double> means_;
  std::vector<double> sigmas_;
  double log_norm_ = 0.0;
};

/// Reweighted integrand: the target integrand divided by the sampler density.
using McIntegrand = std::function<std::complex<double>(std::span<const double>)>;
using RegionPredicate = std::function<bool(std::span<const double>)>;

/// Estimates the integral of the target integrand over {accept} as the mean
/// of accept(x) * f(x) over `samples` draws. Samples are processed in fixed
/// chunks that are reduced in chunk order, so the result is bitwise
/// reproducible for (seed, samples) regardless of `workers`.
///
/// Throws DegenerateEstimateError if no draw is accepted.
McEstimate mc_integrate(const McIntegrand& f, const GaussianProductSampler& sampler,
                        const RegionPredicate& accept, std::uint64_t samples,
                        std::uint64_t seed, unsigned workers = 1);

}  // namespace udw::numerics
