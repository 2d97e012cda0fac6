#include "siegel/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace siegel {

namespace {

constexpr double kSingularCond = 1e12;
// t-values below this are treated as one degenerate cluster in kak_factorize.
constexpr double kPairingTol = 1e-8;

double scale_of(const CMatrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

RMatrix symmetric_exp(const RMatrix& s) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (s + s.transpose()));
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

void require_square_even(const RMatrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0 || g.rows() == 0)
    throw PreconditionError("symplectic matrix must be 2n x 2n");
}

}  // namespace

RMatrix standard_J(int n) {
  RMatrix j = RMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RMatrix::Identity(n, n);
  return j;
}

double symplectic_defect(const RMatrix& g) {
  const int n = static_cast<int>(g.rows() / 2);
  const RMatrix j = standard_J(n);
  return (g.transpose() * j * g - j).cwiseAbs().maxCoeff();
}

SymplecticMatrix::SymplecticMatrix(RMatrix g, double tol) : g_(std::move(g)) {
  require_square_even(g_);
  const double scale = std::max(1.0, g_.cwiseAbs().maxCoeff());
  const double defect = symplectic_defect(g_);
  if (defect > tol * scale * scale) {
    std::ostringstream os;
    os << "matrix is not symplectic (defect " << defect << ")";
    throw PreconditionError(os.str());
  }
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  return SymplecticMatrix(RMatrix::Identity(2 * n, 2 * n), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::J(int n) { return SymplecticMatrix(standard_J(n), Unchecked{}); }

SymplecticMatrix SymplecticMatrix::translation(const RMatrix& x) {
  const auto n = x.rows();
  if (x.cols() != n) throw PreconditionError("translation: x must be square");
  if ((x - x.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff()))
    throw PreconditionError("translation: x must be symmetric");
  RMatrix g = RMatrix::Identity(2 * n, 2 * n);
  g.topRightCorner(n, n) = x;
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::scaling(const RMatrix& y) {
  const auto n = y.rows();
  if (y.cols() != n) throw PreconditionError("scaling: y must be square");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (y + y.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.0) throw PreconditionError("scaling: y must be positive definite");
  const RVector s = es.eigenvalues().cwiseSqrt();
  RMatrix g = RMatrix::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
  g.bottomRightCorner(n, n) = es.eigenvectors() * s.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::from_unitary(const UnitaryMatrix& u) {
  const int n = u.n();
  RMatrix g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = u.matrix().real();
  g.topRightCorner(n, n) = u.matrix().imag();
  g.bottomLeftCorner(n, n) = -u.matrix().imag();
  g.bottomRightCorner(n, n) = u.matrix().real();
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::hyperbolic(const RVector& t) {
  const auto n = t.size();
  RMatrix g = RMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    g(r, r) = std::exp(t(r));
    g(n + r, n + r) = std::exp(-t(r));
  }
  return SymplecticMatrix(std::move(g), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const int k = n();
  RMatrix inv(2 * k, 2 * k);
  inv.topLeftCorner(k, k) = D().transpose();
  inv.topRightCorner(k, k) = -B().transpose();
  inv.bottomLeftCorner(k, k) = -C().transpose();
  inv.bottomRightCorner(k, k) = A().transpose();
  return SymplecticMatrix(std::move(inv), Unchecked{});
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& h) const {
  if (h.n() != n()) throw PreconditionError("symplectic product: dimension mismatch");
  return SymplecticMatrix(g_ * h.g_, Unchecked{});
}

SiegelPoint::SiegelPoint(CMatrix z) : z_(std::move(z)) {
  if (z_.rows() != z_.cols() || z_.rows() == 0) throw PreconditionError("Siegel point must be square");
  if ((z_ - z_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale_of(z_))
    throw PreconditionError("Siegel point must be symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (y() + y().transpose()), Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0))
    throw PreconditionError("Siegel point must have positive definite imaginary part");
}

SiegelPoint SiegelPoint::i_identity(int n) { return SiegelPoint(kI * CMatrix::Identity(n, n)); }

DiskPoint::DiskPoint(CMatrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols() || w_.rows() == 0) throw PreconditionError("disk point must be square");
  if ((w_ - w_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale_of(w_))
    throw PreconditionError("disk point must be symmetric");
  const CMatrix h = CMatrix::Identity(n(), n()) - w_.adjoint() * w_;
  if (!(min_hermitian_eigenvalue(h) > 0.0)) throw PreconditionError("disk point must satisfy I - w^*w > 0");
}

SymplecticMatrix KAKFactors::reconstruct() const {
  return SymplecticMatrix::from_unitary(u) * SymplecticMatrix::hyperbolic(t) *
         SymplecticMatrix::from_unitary(u_prime);
}

SymplecticMatrix NAKFactors::reconstruct() const {
  return SymplecticMatrix::translation(x) * SymplecticMatrix::scaling(y) * SymplecticMatrix::from_unitary(k);
}

CMatrix automorphy_factor(const SymplecticMatrix& g, const SiegelPoint& z) {
  if (g.n() != z.n()) throw PreconditionError("dimension mismatch between group element and point");
  CMatrix m = g.C().cast<cplx>() * z.matrix() + g.D().cast<cplx>();
  if (condition_number(m) > kSingularCond) throw PreconditionError("Cz + D is numerically singular");
  return m;
}

SiegelPoint moebius(const SymplecticMatrix& g, const SiegelPoint& z) {
  const CMatrix m = automorphy_factor(g, z);
  const CMatrix num = g.A().cast<cplx>() * z.matrix() + g.B().cast<cplx>();
  // w = num * m^{-1}, i.e. m^T w^T = num^T
  const CMatrix wt = m.transpose().partialPivLu().solve(num.transpose());
  const CMatrix w = wt.transpose();
  return SiegelPoint(0.5 * (w + w.transpose()));
}

RMatrix imag_transform(const SymplecticMatrix& g, const SiegelPoint& z) {
  const CMatrix minv = automorphy_factor(g, z).inverse();
  const CMatrix im = minv.adjoint() * z.y().cast<cplx>() * minv;
  const RMatrix r = im.real();
  return 0.5 * (r + r.transpose());
}

NAKFactors nak_factorize(const SymplecticMatrix& g) {
  const int n = g.n();
  const SiegelPoint z = moebius(g, SiegelPoint::i_identity(n));
  const RMatrix x = z.x();
  const RMatrix y = 0.5 * (z.y() + z.y().transpose());
  const RMatrix k = (SymplecticMatrix::scaling(y).inverse() * SymplecticMatrix::translation(x).inverse() * g).matrix();
  const CMatrix u = k.topLeftCorner(n, n).cast<cplx>() + kI * k.topRightCorner(n, n).cast<cplx>();
  return {x, y, UnitaryMatrix(unitary_polar(u), 1e-8)};
}

KAKFactors kak_factorize(const SymplecticMatrix& g) {
  const int n = g.n();
  const int n2 = 2 * n;
  const RMatrix jm = standard_J(n);

  // Polar decomposition g = k p, p = exp(X) with X symmetric in the
  // non-compact part of the Lie algebra.
  Eigen::JacobiSVD<RMatrix> svd(g.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RMatrix k = svd.matrixU() * svd.matrixV().transpose();
  const RMatrix logp = svd.matrixV() * svd.singularValues().array().log().matrix().asDiagonal() *
                       svd.matrixV().transpose();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (logp + logp.transpose()));
  const RVector& ev = es.eigenvalues();  // ascending, pairs +-t_r
  const RMatrix& vecs = es.eigenvectors();

  std::vector<RVector> chosen;
  auto residual = [&](RVector c) {
    for (const auto& e : chosen) {
      c -= e.dot(c) * e;
      const RVector je = jm * e;
      c -= je.dot(c) * je;
    }
    return c;
  };

  // Eigenvectors for strictly positive t: automatically orthogonal to J of
  // each other, since J maps the e^{t} eigenspace of p onto the e^{-t} one.
  for (Eigen::Index i = n2 - 1; i >= 0 && static_cast<int>(chosen.size()) < n; --i) {
    if (ev(i) <= kPairingTol) break;
    RVector c = residual(vecs.col(i));
    chosen.push_back(c.normalized());
  }

  // Degenerate t = 0 cluster: pick a Lagrangian orthonormal frame, preferring
  // the standard basis so that g in K factors as (u, 0, I).
  if (static_cast<int>(chosen.size()) < n) {
    std::vector<Eigen::Index> cluster;
    for (Eigen::Index i = 0; i < n2; ++i)
      if (std::abs(ev(i)) <= kPairingTol) cluster.push_back(i);
    RMatrix w(n2, static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t c = 0; c < cluster.size(); ++c) w.col(static_cast<Eigen::Index>(c)) = vecs.col(cluster[c]);
    const RMatrix proj = w * w.transpose();
    while (static_cast<int>(chosen.size()) < n) {
      std::vector<RVector> res;
      double best = 0.0;
      for (int j = 0; j < n2; ++j) {
        res.push_back(residual(proj.col(j)));
        best = std::max(best, res.back().norm());
      }
      if (best < 1e-6) throw std::logic_error("kak_factorize: failed to complete a Lagrangian frame");
      for (int j = 0; j < n2; ++j) {
        if (res[static_cast<std::size_t>(j)].norm() >= 0.99 * best) {
          chosen.push_back(res[static_cast<std::size_t>(j)].normalized());
          break;
        }
      }
    }
  }

  // Deterministic signs, then sort by t descending.
  std::vector<double> tv(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    RVector& e = chosen[static_cast<std::size_t>(r)];
    Eigen::Index imax = 0;
    e.cwiseAbs().maxCoeff(&imax);
    if (e(imax) < 0) e = -e;
    const double tr = e.dot(logp * e);
    tv[static_cast<std::size_t>(r)] = tr > kPairingTol ? tr : 0.0;
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return tv[static_cast<std::size_t>(a)] > tv[static_cast<std::size_t>(b)]; });

  RMatrix q(n2, n2);
  RVector t(n);
  for (int r = 0; r < n; ++r) {
    const RVector& e = chosen[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
    q.col(r) = e;
    q.col(n + r) = -(jm * e);
    t(r) = tv[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])];
  }

  const RMatrix kp = q.transpose();
  const RMatrix ku = k * q;
  const CMatrix u = ku.topLeftCorner(n, n).cast<cplx>() + kI * ku.topRightCorner(n, n).cast<cplx>();
  const CMatrix up = kp.topLeftCorner(n, n).cast<cplx>() + kI * kp.topRightCorner(n, n).cast<cplx>();
  return {UnitaryMatrix(unitary_polar(u), 1e-8), t, UnitaryMatrix(unitary_polar(up), 1e-8)};
}

DiskPoint cayley(const SiegelPoint& z) {
  const int n = z.n();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix m = z.matrix() + kI * id;
  const CMatrix num = z.matrix() - kI * id;
  const CMatrix w = m.transpose().partialPivLu().solve(num.transpose()).transpose();
  return DiskPoint(0.5 * (w + w.transpose()));
}

SiegelPoint inverse_cayley(const DiskPoint& w) {
  const int n = w.n();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix m = id - w.matrix();
  if (condition_number(m) > kSingularCond) throw PreconditionError("I - w is numerically singular");
  const CMatrix num = kI * (id + w.matrix());
  const CMatrix z = m.transpose().partialPivLu().solve(num.transpose()).transpose();
  return SiegelPoint(0.5 * (z + z.transpose()));
}

UnitaryMatrix haar_unitary(Rng& rng, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) z(r, c) = cplx(normal(rng), normal(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& rmat = qr.matrixQR();
  for (int c = 0; c < n; ++c) {
    const cplx d = rmat(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return UnitaryMatrix(std::move(q), 1e-9);
}

DiskSample sample_disk(Rng& rng, int n) {
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  CMatrix w(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) {
      w(r, s) = cplx(box(rng), box(rng));
      w(s, r) = w(r, s);
    }
  const CMatrix h = CMatrix::Identity(n, n) - w.adjoint() * w;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  DiskSample out;
  out.w = std::move(w);
  if (!(es.eigenvalues().minCoeff() > 0.0)) return out;
  const int m = n * (n + 1) / 2;
  const double det = es.eigenvalues().prod();
  out.accepted = true;
  out.weight = std::pow(2.0, n * (n + 1)) * std::pow(det, -(n + 1)) * std::pow(4.0, m);
  return out;
}

SymplecticMatrix random_symplectic(Rng& rng, int n, double t_max) {
  std::uniform_real_distribution<double> unif(0.0, t_max);
  RVector t(n);
  for (int r = 0; r < n; ++r) t(r) = unif(rng);
  const UnitaryMatrix u = haar_unitary(rng, n);
  const UnitaryMatrix up = haar_unitary(rng, n);
  return SymplecticMatrix::from_unitary(u) * SymplecticMatrix::hyperbolic(t) * SymplecticMatrix::from_unitary(up);
}

SiegelPoint random_siegel_point(Rng& rng, int n, double x_max, double s_max) {
  std::uniform_real_distribution<double> ux(-x_max, x_max), us(-s_max, s_max);
  RMatrix x(n, n), s(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      x(r, c) = x(c, r) = ux(rng);
      s(r, c) = s(c, r) = us(rng);
    }
  const RMatrix y = symmetric_exp(s);
  return SiegelPoint(x.cast<cplx>() + kI * y.cast<cplx>());
}

}  // namespace siegel
