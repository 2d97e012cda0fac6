#pragma once

#include "siegel/symplectic.hpp"

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace testing {

using namespace siegel;

// Independent sampler on H_n (n <= 2): x uniform in a box, y = L L^T with
// log-uniform diagonal of L and uniform off-diagonal, weighted by the
// Jacobian and det(y)^{-n-1}.
struct HalfSpaceSample {
  CMatrix z;
  double weight;
};

inline HalfSpaceSample sample_half_space(Rng& rng, int n) {
  const double xb = 3.0, lo = std::log(0.05), hi = std::log(2.6), ob = 2.6;
  std::uniform_real_distribution<double> ux(-xb, xb), ul(lo, hi), uo(-ob, ob);
  RMatrix x(n, n), l = RMatrix::Zero(n, n);
  double vol = 1.0;
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      x(r, c) = x(c, r) = ux(rng);
      vol *= 2.0 * xb;
    }
  double jac = std::pow(2.0, n);
  for (int r = 0; r < n; ++r) {
    const double s = ul(rng);
    l(r, r) = std::exp(s);
    vol *= hi - lo;
    jac *= std::pow(l(r, r), n - r) * l(r, r);  // dy Jacobian times d(l_rr) = l_rr ds
    for (int c = 0; c < r; ++c) {
      l(r, c) = uo(rng);
      vol *= 2.0 * ob;
    }
  }
  const RMatrix y = l * l.transpose();
  return {x.cast<cplx>() + kI * y.cast<cplx>(), vol * jac * std::pow(y.determinant(), -(n + 1))};
}

inline double bump(const CMatrix& w, const CMatrix& center, double r2) {
  const double d = (w - center).squaredNorm();
  return d < r2 ? (r2 - d) * (r2 - d) : 0.0;
}

// Three test functions on D_n concentrated away from the boundary.
inline std::vector<std::function<double(const CMatrix&)>> pushforward_functions(int n) {
  const CMatrix c0 = CMatrix::Zero(n, n);
  CMatrix c1 = CMatrix::Zero(n, n);
  c1(0, 0) = cplx(0.15, -0.1);
  return {
      [c0](const CMatrix& w) { return bump(w, c0, 0.36); },
      [c0](const CMatrix& w) { return bump(w, c0, 0.36) * (1.0 + w(0, 0).real()); },
      [c1](const CMatrix& w) { return bump(w, c1, 0.25); },
  };
}

// (disk-side estimate, half-space-side estimate) of the integral of h.
inline std::pair<IntegralEstimate, IntegralEstimate> pushforward_pair(
    int n, const std::function<double(const CMatrix&)>& h, McOptions o) {
  const IntegralEstimate disk = integrate(o, [&](Rng& rng) {
    const DiskSample s = sample_disk(rng, n);
    return s.accepted ? h(s.w) * s.weight : 0.0;
  });
  o.stream = 1;
  const IntegralEstimate half = integrate(o, [&](Rng& rng) {
    const HalfSpaceSample s = sample_half_space(rng, n);
    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix w = (s.z - kI * id) * (s.z + kI * id).inverse();
    return h(w) * s.weight;
  });
  return {disk, half};
}

}  // namespace testing
