#pragma once

#include "siegel/linalg.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace siegel {

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream, worker).
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t worker);

struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct ComplexEstimate {
  cplx value{};
  // sqrt(Var(re) + Var(im)) / sqrt(samples)
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const IntegralEstimate& e);
nlohmann::json to_json(const ComplexEstimate& e);

/// Welford accumulator with pooled merge.
class Accumulator {
 public:
  void add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  void merge(const Accumulator& other);

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0; }
  double std_error() const noexcept { return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0; }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct McOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  unsigned workers = 1;
};

/// Mean of draw(rng) over opts.samples draws, split deterministically across
/// opts.workers threads. `draw` must be callable concurrently.
template <class Draw>
IntegralEstimate integrate(const McOptions& opts, Draw&& draw) {
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<Accumulator> acc(workers);
  auto job = [&](unsigned w) {
    Rng rng = make_rng(opts.seed, opts.stream, w);
    const std::uint64_t begin = opts.samples * w / workers;
    const std::uint64_t end = opts.samples * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) acc[w].add(draw(rng));
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& t : pool) t.join();
  }
  Accumulator total;
  for (const auto& a : acc) total.merge(a);
  return {total.mean(), total.std_error(), total.count(), opts.seed};
}

template <class Draw>
ComplexEstimate integrate_complex(const McOptions& opts, Draw&& draw) {
  const unsigned workers = std::max(1u, opts.workers);
  std::vector<Accumulator> re(workers), im(workers);
  auto job = [&](unsigned w) {
    Rng rng = make_rng(opts.seed, opts.stream, w);
    const std::uint64_t begin = opts.samples * w / workers;
    const std::uint64_t end = opts.samples * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) {
      const cplx x = draw(rng);
      re[w].add(x.real());
      im[w].add(x.imag());
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& t : pool) t.join();
  }
  Accumulator tre, tim;
  for (unsigned w = 0; w < workers; ++w) {
    tre.merge(re[w]);
    tim.merge(im[w]);
  }
  const double se = std::hypot(tre.std_error(), tim.std_error());
  return {cplx(tre.mean(), tim.mean()), se, tre.count(), opts.seed};
}

}  // namespace siegel
