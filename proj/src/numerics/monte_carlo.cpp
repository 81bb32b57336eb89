#include "udw/numerics/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "udw/errors.hpp"
#include "udw/numerics/philox.hpp"

namespace udw::numerics {

namespace {

constexpr std::uint64_t kChunk = 1u << 16;

// Running moments of one chunk (Welford), merged with Chan's formula.
struct Moments {
  std::uint64_t n = 0;
  std::uint64_t accepted = 0;
  double mean_re = 0.0;
  double mean_im = 0.0;
  double m2 = 0.0;  // summed squared deviations of Re and Im

  void add(std::complex<double> z) {
    ++n;
    const double dre = z.real() - mean_re;
    const double dim = z.imag() - mean_im;
    mean_re += dre / static_cast<double>(n);
    mean_im += dim / static_cast<double>(n);
    m2 += dre * (z.real() - mean_re) + dim * (z.imag() - mean_im);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    const double n1 = static_cast<double>(n);
    const double n2 = static_cast<double>(o.n);
    const double total = n1 + n2;
    const double dre = o.mean_re - mean_re;
    const double dim = o.mean_im - mean_im;
    mean_re += dre * n2 / total;
    mean_im += dim * n2 / total;
    m2 += o.m2 + (dre * dre + dim * dim) * n1 * n2 / total;
    n += o.n;
    accepted += o.accepted;
  }
};

}  // namespace

GaussianProductSampler::GaussianProductSampler(std::vector<double> means,
                                               std::vector<double> sigmas)
    : means_(std::move(means)), sigmas_(std::move(sigmas)) {
  if (means_.size() != sigmas_.size() || means_.empty()) {
    throw std::invalid_argument("sampler needs matching, non-empty means and sigmas");
  }
  for (double s : sigmas_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("sampler standard deviations must be > 0");
    }
    log_norm_ -= std::log(s) + 0.5 * std::log(2.0 * std::numbers::pi);
  }
}

void GaussianProductSampler::draw(std::uint64_t seed, std::uint64_t index,
                                  std::span<double> out) const {
  if (out.size() != dimension()) {
    throw std::invalid_argument("sample buffer has the wrong dimension");
  }
  const Philox4x32::Key key = Philox4x32::key_from_seed(seed);
  const auto idx_lo = static_cast<std::uint32_t>(index);
  const auto idx_hi = static_cast<std::uint32_t>(index >> 32);
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const auto block = static_cast<std::uint32_t>(i / 2);
    const auto r = Philox4x32::apply({idx_lo, idx_hi, block, 0u}, key);
    // Box-Muller on two open-interval uniforms.
    const double u1 = uniform_open01(r[0], r[1]);
    const double u2 = uniform_open01(r[2], r[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[i] = means_[i] + sigmas_[i] * radius * std::cos(angle);
    if (i + 1 < out.size()) {
      out[i + 1] = means_[i + 1] + sigmas_[i + 1] * radius * std::sin(angle);
    }
  }
}

double GaussianProductSampler::density(std::span<const double> x) const {
  double q = 0.0;
  for (std::size_t i = 0; i < means_.size(); ++i) {
    const double z = (x[i] - means_[i]) / sigmas_[i];
    q += z * z;
  }
  return std::exp(log_norm_ - 0.5 * q);
}

McEstimate mc_integrate(const McIntegrand& f, const GaussianProductSampler& sampler,
                        const RegionPredicate& accept, std::uint64_t samples,
                        std::uint64_t seed, unsigned workers) {
  if (samples < 2) {
    throw std::invalid_argument("Monte-Carlo integration needs at least two samples");
  }
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_chunks = [&]() {
    std::vector<double> x(sampler.dimension());
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      Moments m;
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(samples, begin + kChunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        sampler.draw(seed, i, x);
        if (accept(x)) {
          ++m.accepted;
          m.add(f(x));
        } else {
          m.add(0.0);
        }
      }
      partial[c] = m;
    }
  };

  auto work = [&]() noexcept {
    try {
      run_chunks();
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = chunks;
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || chunks == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::uint64_t>(workers, chunks); ++w) {
      pool.emplace_back(work);
    }
  }

  if (failure) std::rethrow_exception(failure);

  Moments total;
  for (const Moments& m : partial) total.merge(m);
  if (total.accepted == 0) {
    throw DegenerateEstimateError("no Monte-Carlo sample fell inside the accepted region");
  }
  const double n = static_cast<double>(total.n);
  const double variance = total.m2 / (n - 1.0);
  return McEstimate{{total.mean_re, total.mean_im}, std::sqrt(variance / n), total.n,
                    total.accepted, seed};
}

}  // namespace udw::numerics
