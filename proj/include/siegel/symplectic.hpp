#pragma once

#include "siegel/glrep.hpp"
#include "siegel/linalg.hpp"
#include "siegel/montecarlo.hpp"

namespace siegel {

/// Element of Sp_{2n}(R): g^T J g = J with J = [[0, I], [-I, 0]].
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(RMatrix g, double tol = 1e-9);

  static SymplecticMatrix identity(int n);
  static SymplecticMatrix J(int n);
  /// n_x = [[I, x], [0, I]] for real symmetric x.
  static SymplecticMatrix translation(const RMatrix& x);
  /// a_y = diag(y^{1/2}, y^{-1/2}) for real positive definite y.
  static SymplecticMatrix scaling(const RMatrix& y);
  /// k_u = [[Re u, Im u], [-Im u, Re u]].
  static SymplecticMatrix from_unitary(const UnitaryMatrix& u);
  /// h_t = diag(e^{t_1}, ..., e^{t_n}, e^{-t_1}, ..., e^{-t_n}).
  static SymplecticMatrix hyperbolic(const RVector& t);

  int n() const noexcept { return static_cast<int>(g_.rows() / 2); }
  const RMatrix& matrix() const noexcept { return g_; }
  auto A() const { return g_.topLeftCorner(n(), n()); }
  auto B() const { return g_.topRightCorner(n(), n()); }
  auto C() const { return g_.bottomLeftCorner(n(), n()); }
  auto D() const { return g_.bottomRightCorner(n(), n()); }

  SymplecticMatrix inverse() const;
  SymplecticMatrix operator*(const SymplecticMatrix& h) const;

 private:
  struct Unchecked {};
  SymplecticMatrix(RMatrix g, Unchecked) : g_(std::move(g)) {}

  RMatrix g_;
};

/// max |g^T J g - J|.
double symplectic_defect(const RMatrix& g);
RMatrix standard_J(int n);

/// Point of the Siegel upper half-space: symmetric z with Im z > 0.
class SiegelPoint {
 public:
  explicit SiegelPoint(CMatrix z);
  static SiegelPoint i_identity(int n);

  int n() const noexcept { return static_cast<int>(z_.rows()); }
  const CMatrix& matrix() const noexcept { return z_; }
  RMatrix x() const { return z_.real(); }
  RMatrix y() const { return z_.imag(); }

 private:
  CMatrix z_;
};

/// Point of the bounded domain: symmetric w with I - w^* w > 0.
class DiskPoint {
 public:
  explicit DiskPoint(CMatrix w);

  int n() const noexcept { return static_cast<int>(w_.rows()); }
  const CMatrix& matrix() const noexcept { return w_; }

 private:
  CMatrix w_;
};

/// g = k_u h_t k_{u'}, t_1 >= ... >= t_n >= 0.
struct KAKFactors {
  UnitaryMatrix u;
  RVector t;
  UnitaryMatrix u_prime;

  SymplecticMatrix reconstruct() const;
};

/// g = n_x a_y k_u.
struct NAKFactors {
  RMatrix x;
  RMatrix y;
  UnitaryMatrix k;

  SymplecticMatrix reconstruct() const;
};

/// g.z = (Az + B)(Cz + D)^{-1}.
SiegelPoint moebius(const SymplecticMatrix& g, const SiegelPoint& z);
/// Im(g.z) = (Cz + D)^{-*} y (Cz + D)^{-1}.
RMatrix imag_transform(const SymplecticMatrix& g, const SiegelPoint& z);
/// The factor j(g, z) = Cz + D, with the singularity check shared by the action.
CMatrix automorphy_factor(const SymplecticMatrix& g, const SiegelPoint& z);

NAKFactors nak_factorize(const SymplecticMatrix& g);
KAKFactors kak_factorize(const SymplecticMatrix& g);

DiskPoint cayley(const SiegelPoint& z);
SiegelPoint inverse_cayley(const DiskPoint& w);

UnitaryMatrix haar_unitary(Rng& rng, int n);

struct DiskSample {
  bool accepted = false;
  CMatrix w;
  /// 2^{n(n+1)} det(I - w^*w)^{-n-1} times the box volume; 0 when rejected.
  double weight = 0.0;
};

/// One draw from the bounding box of the bounded domain (each entry w_{rs},
/// r <= s, uniform in the complex square of half-width 1). The mean of
/// weight * f(w) over all draws estimates the invariant integral of f.
DiskSample sample_disk(Rng& rng, int n);

/// k_u h_t k_{u'} with Haar u, u' and t_r uniform in [0, t_max].
SymplecticMatrix random_symplectic(Rng& rng, int n, double t_max);
/// n_x a_y with x entries uniform in [-x_max, x_max] and y = exp(s), s symmetric with entries in [-s_max, s_max].
SiegelPoint random_siegel_point(Rng& rng, int n, double x_max = 1.0, double s_max = 0.5);

}  // namespace siegel
