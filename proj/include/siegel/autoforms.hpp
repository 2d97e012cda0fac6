#pragma once

#include "siegel/enumeration.hpp"
#include "siegel/glrep.hpp"
#include "siegel/montecarlo.hpp"
#include "siegel/polynomial.hpp"
#include "siegel/symplectic.hpp"

#include <functional>

namespace siegel {

using VectorFunction = std::function<CVector(const SiegelPoint&)>;

/// The data (rho, mu, v) defining f_{mu,v}(z) = mu(l(z)) rho((z + iI)/2i)^{-1} v,
/// l the Cayley transform.
struct CuspSeed {
  CuspSeed(PolyRep rep, MatrixPolynomial mu, CVector v);

  PolyRep rep;
  MatrixPolynomial mu;
  CVector v;
};

/// Symmetric T with integer diagonal and half-integer off-diagonal entries.
class HalfIntegralMatrix {
 public:
  explicit HalfIntegralMatrix(RMatrix t);

  int n() const noexcept { return static_cast<int>(t_.rows()); }
  const RMatrix& matrix() const noexcept { return t_; }
  /// tr(T z).
  cplx pair(const CMatrix& z) const;

 private:
  RMatrix t_;
};

CVector eval_p(const MatrixPolynomial& mu, const CVector& v, const DiskPoint& w);
CVector eval_f(const CuspSeed& seed, const SiegelPoint& z);
VectorFunction as_function(const CuspSeed& seed);

/// (f|g)(z) = rho(Cz + D)^{-1} f(g.z).
CVector slash_at(const PolyRep& rep, const VectorFunction& f, const SymplecticMatrix& g, const SiegelPoint& z);
VectorFunction slash(const PolyRep& rep, VectorFunction f, const SymplecticMatrix& g);

/// F_f(g) = (f|g)(iI).
CVector classical_lift(const PolyRep& rep, const VectorFunction& f, const SymplecticMatrix& g);
CVector classical_lift(const CuspSeed& seed, const SymplecticMatrix& g);
/// mu(u tanh(d_t) u^T) rho(u'^T cosh(d_t)^{-1} u^T) v.
CVector lift_closed_form(const CuspSeed& seed, const KAKFactors& kak);

struct ShellStats {
  int word_length = 0;
  std::size_t count = 0;
  double max_norm = 0.0;
};

struct PoincareResult {
  CVector value;
  double max_term_norm = 0.0;
  double sum_term_norms = 0.0;
  std::vector<ShellStats> shells;
};

/// Sum over gamma in S of (f_{mu,v}|gamma)(z). Requires omega_n > 2n.
PoincareResult poincare_truncated(const CuspSeed& seed, const GroupElementSet& s, const SiegelPoint& z);

struct FourierOptions {
  int points = 64;
  std::size_t max_grid = 10000000;
};

/// a_T = N^{-m} int_{[0,N]^m} exp(-2 pi i tr(Tz)/N) f(z) dx at Im z = y0,
/// by the rectangle rule (exact for trigonometric polynomials of low degree).
/// n <= 2.
CVector fourier_coefficient(const VectorFunction& f, const HalfIntegralMatrix& t, long long level,
                            const RMatrix& y0, const FourierOptions& opts = {});

/// <f1, f2> over SL_2(Z)\H with the 1/2 prefactor; n = 1 only.
ComplexEstimate petersson_inner_mc(const VectorFunction& f1, const VectorFunction& f2, const PolyRep& rep,
                                   const McOptions& opts);

/// int over the disk of ||rho(I - w^*w)^{1/2} v_top||^2. Requires omega_n > n.
IntegralEstimate c_rho(const PolyRep& rep, const McOptions& opts);

/// <pi(g) f, f_{1,v}> = int <rho(y^{1/2}) (f|g^{-1})(z), rho(y^{1/2}) f_{1,v}(z)> dv(z),
/// sampled on the disk. Requires omega_n > n.
ComplexEstimate matrix_coefficient_mc(const CuspSeed& f, const CVector& v, const SymplecticMatrix& g,
                                      const McOptions& opts);
/// C * <F_f(g^{-1}), v>.
cplx matrix_coefficient_expected(const CuspSeed& f, const CVector& v, const SymplecticMatrix& g, double c);

}  // namespace siegel
