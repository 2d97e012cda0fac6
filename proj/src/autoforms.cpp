#include "siegel/autoforms.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace siegel {

namespace {

// Samples with I - w^*w closer to singular than this are dropped; the
// integrands vanish there when omega_n > n.
constexpr double kBoundaryGuard = 1e-10;

CVector solve_rep(const PolyRep& rep, const CMatrix& m, const CVector& v) {
  return rep.apply(m).partialPivLu().solve(v);
}

void require_discrete_series(const PolyRep& rep, const char* what) {
  if (rep.det_twist() <= rep.n()) {
    std::ostringstream os;
    os << what << ": requires omega_n > n (square-integrability), got omega_n = " << rep.det_twist();
    throw PreconditionError(os.str());
  }
}

}  // namespace

CuspSeed::CuspSeed(PolyRep r, MatrixPolynomial m, CVector vec) : rep(std::move(r)), mu(std::move(m)), v(std::move(vec)) {
  if (mu.n() != rep.n()) throw ConfigError("seed: mu and rho act on different matrix sizes");
  if (v.size() != rep.dim()) throw ConfigError("seed: v has the wrong dimension");
}

HalfIntegralMatrix::HalfIntegralMatrix(RMatrix t) : t_(std::move(t)) {
  if (t_.rows() != t_.cols() || t_.rows() == 0) throw ConfigError("T must be square");
  for (Eigen::Index r = 0; r < t_.rows(); ++r)
    for (Eigen::Index s = 0; s < t_.cols(); ++s) {
      if (t_(r, s) != t_(s, r)) throw ConfigError("T must be symmetric");
      const double scaled = r == s ? t_(r, s) : 2.0 * t_(r, s);
      if (scaled != std::round(scaled)) throw ConfigError("T must be half-integral");
    }
}

cplx HalfIntegralMatrix::pair(const CMatrix& z) const {
  cplx sum = 0.0;
  for (Eigen::Index r = 0; r < t_.rows(); ++r) {
    sum += t_(r, r) * z(r, r);
    for (Eigen::Index s = r + 1; s < t_.cols(); ++s) sum += 2.0 * t_(r, s) * z(r, s);
  }
  return sum;
}

CVector eval_p(const MatrixPolynomial& mu, const CVector& v, const DiskPoint& w) {
  if (mu.n() != w.n()) throw PreconditionError("eval_p: dimension mismatch");
  return mu.evaluate(w.matrix()) * v;
}

CVector eval_f(const CuspSeed& seed, const SiegelPoint& z) {
  if (z.n() != seed.rep.n()) throw PreconditionError("eval_f: dimension mismatch");
  const int n = z.n();
  const DiskPoint w = cayley(z);
  const CMatrix m = (z.matrix() + kI * CMatrix::Identity(n, n)) / (2.0 * kI);
  return seed.mu.evaluate(w.matrix()) * solve_rep(seed.rep, m, seed.v);
}

VectorFunction as_function(const CuspSeed& seed) {
  return [seed](const SiegelPoint& z) { return eval_f(seed, z); };
}

CVector slash_at(const PolyRep& rep, const VectorFunction& f, const SymplecticMatrix& g, const SiegelPoint& z) {
  const CMatrix j = automorphy_factor(g, z);
  return solve_rep(rep, j, f(moebius(g, z)));
}

VectorFunction slash(const PolyRep& rep, VectorFunction f, const SymplecticMatrix& g) {
  return [rep, f = std::move(f), g](const SiegelPoint& z) { return slash_at(rep, f, g, z); };
}

CVector classical_lift(const PolyRep& rep, const VectorFunction& f, const SymplecticMatrix& g) {
  return slash_at(rep, f, g, SiegelPoint::i_identity(g.n()));
}

CVector classical_lift(const CuspSeed& seed, const SymplecticMatrix& g) {
  return classical_lift(seed.rep, as_function(seed), g);
}

CVector lift_closed_form(const CuspSeed& seed, const KAKFactors& kak) {
  const CMatrix& u = kak.u.matrix();
  const CMatrix& up = kak.u_prime.matrix();
  const RVector th = kak.t.array().tanh().matrix();
  const RVector sech = kak.t.array().cosh().inverse().matrix();
  const CMatrix w = u * th.cast<cplx>().asDiagonal() * u.transpose();
  const CMatrix m = up.transpose() * sech.cast<cplx>().asDiagonal() * u.transpose();
  return seed.mu.evaluate(w) * (seed.rep.apply(m) * seed.v);
}

PoincareResult poincare_truncated(const CuspSeed& seed, const GroupElementSet& s, const SiegelPoint& z) {
  const int n = seed.rep.n();
  if (seed.rep.det_twist() <= 2 * n) {
    std::ostringstream os;
    os << "poincare: requires omega_n > 2n for integrability of the seed function (omega_n = "
       << seed.rep.det_twist() << ", 2n = " << 2 * n << ")";
    throw PreconditionError(os.str());
  }
  if (s.n != n || z.n() != n) throw PreconditionError("poincare: dimension mismatch");
  const VectorFunction f = as_function(seed);
  PoincareResult out;
  out.value = CVector::Zero(seed.rep.dim());
  std::map<int, ShellStats> shells;
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    const CVector term = slash_at(seed.rep, f, to_real(s.elements[i]), z);
    out.value += term;
    const double norm = term.norm();
    out.max_term_norm = std::max(out.max_term_norm, norm);
    out.sum_term_norms += norm;
    const int len = i < s.word_length.size() ? s.word_length[i] : 0;
    auto& shell = shells[len];
    shell.word_length = len;
    ++shell.count;
    shell.max_norm = std::max(shell.max_norm, norm);
  }
  for (const auto& [len, st] : shells) out.shells.push_back(st);
  return out;
}

CVector fourier_coefficient(const VectorFunction& f, const HalfIntegralMatrix& t, long long level,
                            const RMatrix& y0, const FourierOptions& opts) {
  const int n = t.n();
  if (n > 2) throw PreconditionError("fourier: only n <= 2 is supported");
  if (level < 1) throw ConfigError("fourier: level must be positive");
  if (opts.points < 1) throw ConfigError("fourier: need at least one quadrature point");
  if (y0.rows() != n || y0.cols() != n) throw PreconditionError("fourier: y0 has the wrong size");
  const int m = n * (n + 1) / 2;
  double grid = 1.0;
  for (int k = 0; k < m; ++k) grid *= opts.points;
  if (grid > static_cast<double>(opts.max_grid)) {
    std::ostringstream os;
    os << "fourier: grid of " << grid << " points exceeds budget " << opts.max_grid;
    throw ResourceError(os.str());
  }
  const auto total = static_cast<std::size_t>(grid);
  const double nl = static_cast<double>(level);
  const double two_pi = 2.0 * std::numbers::pi;
  CVector acc;
  for (std::size_t idx = 0; idx < total; ++idx) {
    RMatrix x(n, n);
    std::size_t rest = idx;
    for (int r = 0; r < n; ++r)
      for (int c = r; c < n; ++c) {
        const auto k = rest % static_cast<std::size_t>(opts.points);
        rest /= static_cast<std::size_t>(opts.points);
        x(r, c) = x(c, r) = nl * static_cast<double>(k) / opts.points;
      }
    const CMatrix z = x.cast<cplx>() + kI * y0.cast<cplx>();
    const CVector val = std::exp(-kI * two_pi * t.pair(z) / nl) * f(SiegelPoint(z));
    if (idx == 0) {
      acc = val;
    } else {
      acc += val;
    }
  }
  return acc / static_cast<double>(total);
}

ComplexEstimate petersson_inner_mc(const VectorFunction& f1, const VectorFunction& f2, const PolyRep& rep,
                                   const McOptions& opts) {
  if (rep.n() != 1) throw PreconditionError("petersson: only n = 1 is supported");
  const double s_max = 2.0 / std::sqrt(3.0);
  const double scale = 0.5 * s_max;  // box area times 1/|{+-I}|
  return integrate_complex(opts, [&](Rng& rng) -> cplx {
    std::uniform_real_distribution<double> ux(-0.5, 0.5), us(0.0, s_max);
    const double x = ux(rng);
    const double y = 1.0 / (s_max - us(rng));
    if (x * x + y * y < 1.0) return 0.0;
    const SiegelPoint z(CMatrix::Constant(1, 1, cplx(x, y)));
    const CMatrix a = rep.apply_sqrt(CMatrix::Constant(1, 1, y));
    const CVector p1 = a * f1(z);
    const CVector p2 = a * f2(z);
    return scale * p2.dot(p1);
  });
}

IntegralEstimate c_rho(const PolyRep& rep, const McOptions& opts) {
  require_discrete_series(rep, "c_rho");
  const int n = rep.n();
  const CVector top = rep.highest_weight_vector();
  return integrate(opts, [&](Rng& rng) -> double {
    const DiskSample s = sample_disk(rng, n);
    if (!s.accepted) return 0.0;
    const CMatrix h = CMatrix::Identity(n, n) - s.w.adjoint() * s.w;
    if (min_hermitian_eigenvalue(h) < kBoundaryGuard) return 0.0;
    return (rep.apply_sqrt(h) * top).squaredNorm() * s.weight;
  });
}

ComplexEstimate matrix_coefficient_mc(const CuspSeed& f, const CVector& v, const SymplecticMatrix& g,
                                      const McOptions& opts) {
  require_discrete_series(f.rep, "matrix coefficient");
  const int n = f.rep.n();
  if (g.n() != n) throw PreconditionError("matrix coefficient: dimension mismatch");
  const CuspSeed base(f.rep, MatrixPolynomial::constant(n, 1.0), v);
  const VectorFunction translated = slash(f.rep, as_function(f), g.inverse());
  return integrate_complex(opts, [&](Rng& rng) -> cplx {
    const DiskSample s = sample_disk(rng, n);
    if (!s.accepted) return 0.0;
    const CMatrix h = CMatrix::Identity(n, n) - s.w.adjoint() * s.w;
    if (min_hermitian_eigenvalue(h) < kBoundaryGuard) return 0.0;
    try {
      const SiegelPoint z = inverse_cayley(DiskPoint(s.w));
      const CMatrix a = f.rep.apply_sqrt(z.y().cast<cplx>());
      const CVector p1 = a * translated(z);
      const CVector p2 = a * eval_f(base, z);
      return p2.dot(p1) * s.weight;
    } catch (const PreconditionError&) {
      return 0.0;
    }
  });
}

cplx matrix_coefficient_expected(const CuspSeed& f, const CVector& v, const SymplecticMatrix& g, double c) {
  return c * v.dot(classical_lift(f, g.inverse()));
}

}  // namespace siegel
