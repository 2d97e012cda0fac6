#include "siegel/montecarlo.hpp"

namespace siegel {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(worker), static_cast<std::uint32_t>(worker >> 32)};
  return Rng(seq);
}

void Accumulator::merge(const Accumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const auto na = static_cast<double>(count_);
  const auto nb = static_cast<double>(other.count_);
  const double delta = other.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  count_ += other.count_;
}

nlohmann::json to_json(const IntegralEstimate& e) {
  return {{"value", e.value}, {"stderr", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

nlohmann::json to_json(const ComplexEstimate& e) {
  return {{"value", {e.value.real(), e.value.imag()}},
          {"stderr", e.std_error},
          {"samples", e.samples},
          {"seed", e.seed}};
}

}  // namespace siegel
