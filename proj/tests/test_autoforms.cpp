#include "doctest.h"
#include "test_support.hpp"

#include "siegel/autoforms.hpp"

#include <numbers>

using namespace siegel;
using namespace testing;

namespace {

constexpr double kPi = std::numbers::pi;

CuspSeed scalar_seed(int m, const std::string& mu = "1") {
  return CuspSeed(PolyRep::build(HighestWeight(1, {m})), parse_mu(mu, 1), CVector::Ones(1));
}

CuspSeed random_seed(Rng& rng, const HighestWeight& w, const std::string& mu) {
  const PolyRep rep = PolyRep::build(w);
  return CuspSeed(rep, parse_mu(mu, w.n()), random_vector(rng, rep.dim()));
}

SiegelPoint point1(cplx z) { return SiegelPoint(CMatrix::Constant(1, 1, z)); }

double vec_rel(const CVector& a, const CVector& b) { return (a - b).norm() / std::max(1e-300, b.norm()); }

const std::vector<std::pair<HighestWeight, std::string>>& lift_cases() {
  static const std::vector<std::pair<HighestWeight, std::string>> cases{
      {HighestWeight(1, {3}), "1"},
      {HighestWeight(1, {4}), "X11^2 - 0.5"},
      {HighestWeight(2, {4, 3}), "1"},
      {HighestWeight(2, {5, 3}), "det + X12"},
      {HighestWeight(2, {3, 3}), "X11*X22 + (0.5 - i)*X21"},
      {HighestWeight(2, {6, 4}), "1"},
  };
  return cases;
}

}  // namespace

TEST_CASE("eval_p examples") {
  Rng rng = make_rng(3, 0, 0);
  const CVector v = random_vector(rng, 3);
  const DiskPoint w1(CMatrix::Constant(1, 1, 0.5));
  CHECK(vec_rel(eval_p(parse_mu("1", 1), v, w1), v) == 0.0);
  CHECK(vec_rel(eval_p(parse_mu("X11", 1), v, w1), 0.5 * v) < 1e-15);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = cplx(0.2, 0.1);
  d(1, 1) = -0.4;
  CHECK(vec_rel(eval_p(parse_mu("det", 2), v, DiskPoint(d)), d(0, 0) * d(1, 1) * v) < 1e-15);
  CHECK_THROWS_AS(eval_p(parse_mu("det", 2), v, w1), PreconditionError);
}

TEST_CASE("eval_f examples") {
  Rng rng = make_rng(4, 0, 0);
  for (const auto& [w, mu] : lift_cases()) {
    const CuspSeed s = random_seed(rng, w, mu);
    const CMatrix zero = CMatrix::Zero(w.n(), w.n());
    CHECK(vec_rel(eval_f(s, SiegelPoint::i_identity(w.n())), s.mu.evaluate(zero) * s.v) < 1e-13);
  }
  // scalar reduction: f_{1,v}(z) = (2i)^m (z + i)^{-m} v
  for (int m : {3, 4, 7}) {
    const CuspSeed s = scalar_seed(m);
    for (int i = 0; i < 20; ++i) {
      const SiegelPoint z = random_siegel_point(rng, 1, 2.0, 1.0);
      const cplx zz = z.matrix()(0, 0);
      const cplx expect = std::pow(2.0 * kI, m) * std::pow(zz + kI, -m);
      CHECK(std::abs(eval_f(s, z)(0) - expect) < 1e-12 * std::abs(expect));
    }
  }
  // mu = X11 adds the Cayley factor (z - i)/(z + i)
  const CuspSeed sx = scalar_seed(3, "X11");
  const cplx z = cplx(0.3, 0.7);
  const cplx expect = (z - kI) / (z + kI) * std::pow(2.0 * kI, 3) * std::pow(z + kI, -3);
  CHECK(std::abs(eval_f(sx, point1(z))(0) - expect) < 1e-13);
  CHECK_THROWS_AS(CuspSeed(PolyRep::build(HighestWeight(1, {3})), parse_mu("1", 2), CVector::Ones(1)), ConfigError);
  CHECK_THROWS_AS(CuspSeed(PolyRep::build(HighestWeight(2, {3, 3})), parse_mu("1", 2), CVector::Ones(2)),
                  ConfigError);
}

TEST_CASE("slash action") {
  Rng rng = make_rng(5, 0, 0);
  for (const auto& [w, mu] : lift_cases()) {
    const CuspSeed s = random_seed(rng, w, mu);
    const VectorFunction f = as_function(s);
    const int n = w.n();
    double worst_id = 0, worst_cocycle = 0, worst_norm = 0;
    for (int i = 0; i < 20; ++i) {
      const SymplecticMatrix g = random_symplectic(rng, n, 1.0);
      const SymplecticMatrix h = random_symplectic(rng, n, 1.0);
      const SiegelPoint z = random_siegel_point(rng, n);
      worst_id = std::max(worst_id, vec_rel(slash_at(s.rep, f, SymplecticMatrix::identity(n), z), f(z)));
      const VectorFunction fg = slash(s.rep, f, g);
      worst_cocycle = std::max(worst_cocycle, vec_rel(slash_at(s.rep, fg, h, z), slash_at(s.rep, f, g * h, z)));

      const CVector lhs = s.rep.apply_sqrt(z.y().cast<cplx>()) * fg(z);
      const SiegelPoint gz = moebius(g, z);
      const CVector rhs = s.rep.apply_sqrt(imag_transform(g, z).cast<cplx>()) * f(gz);
      worst_norm = std::max(worst_norm, std::abs(lhs.norm() - rhs.norm()) / rhs.norm());
    }
    CHECK(worst_id < 1e-14);
    CHECK(worst_cocycle < 1e-9);
    CHECK(worst_norm < 1e-9);
  }
}

TEST_CASE("classical lift") {
  Rng rng = make_rng(6, 0, 0);
  for (const auto& [w, mu] : lift_cases()) {
    CAPTURE(w.omega());
    const CuspSeed s = random_seed(rng, w, mu);
    const int n = w.n();
    const CVector at_i = eval_f(s, SiegelPoint::i_identity(n));
    CHECK(vec_rel(classical_lift(s, SymplecticMatrix::identity(n)), at_i) < 1e-14);

    double worst_k = 0, worst_closed = 0, worst_equi = 0, worst_norm = 0;
    for (int i = 0; i < 20; ++i) {
      const UnitaryMatrix u = haar_unitary(rng, n);
      const SymplecticMatrix k = SymplecticMatrix::from_unitary(u);
      const CVector fk = classical_lift(s, k);
      // f(iI) vanishes when mu(0) = 0, so compare on an absolute scale
      const CVector expect_k = s.rep.eval_sigma(u).partialPivLu().solve(at_i);
      worst_k = std::max(worst_k, (fk - expect_k).norm() / std::max(1.0, expect_k.norm()));

      const UnitaryMatrix u1 = haar_unitary(rng, n), u2 = haar_unitary(rng, n);
      RVector t = (RVector::Random(n).array() + 1.0) * 0.75;
      std::sort(t.data(), t.data() + n, std::greater<>());
      const KAKFactors kak{u1, t, u2};
      const SymplecticMatrix g = kak.reconstruct();
      const CVector lift = classical_lift(s, g);
      worst_closed = std::max(worst_closed, vec_rel(lift_closed_form(s, kak), lift));

      const CVector gk = classical_lift(s, g * k);
      worst_equi = std::max(worst_equi, vec_rel(gk, s.rep.eval_sigma(u).partialPivLu().solve(lift)));

      const SiegelPoint z = moebius(g, SiegelPoint::i_identity(n));
      const CVector rhs = s.rep.apply_sqrt(z.y().cast<cplx>()) * eval_f(s, z);
      worst_norm = std::max(worst_norm, std::abs(lift.norm() - rhs.norm()) / rhs.norm());
    }
    CHECK(worst_k < 1e-10);
    CHECK(worst_closed < 1e-9);
    CHECK(worst_equi < 1e-9);
    CHECK(worst_norm < 1e-9);
  }
}

TEST_CASE("closed form special cases") {
  Rng rng = make_rng(7, 0, 0);
  const CuspSeed s = random_seed(rng, HighestWeight(2, {5, 3}), "det + X12 + 0.25");
  const UnitaryMatrix u = haar_unitary(rng, 2), up = haar_unitary(rng, 2);
  const CVector at_zero = lift_closed_form(s, KAKFactors{u, RVector::Zero(2), up});
  const CVector expect0 = cplx(0.25) * (s.rep.apply(up.matrix().transpose() * u.matrix().transpose()) * s.v);
  CHECK(vec_rel(at_zero, expect0) < 1e-13);

  RVector t(2);
  t << 0.9, 0.2;
  const CMatrix th = t.array().tanh().matrix().cast<cplx>().asDiagonal();
  const CMatrix ch = t.array().cosh().matrix().cast<cplx>().asDiagonal();
  const CVector diag = lift_closed_form(s, KAKFactors{UnitaryMatrix::identity(2), t, UnitaryMatrix::identity(2)});
  const CVector expect = s.mu.evaluate(th) * s.rep.apply(ch).partialPivLu().solve(s.v);
  CHECK(vec_rel(diag, expect) < 1e-13);
  CHECK(vec_rel(diag, classical_lift(s, SymplecticMatrix::hyperbolic(t))) < 1e-12);
}

TEST_CASE("truncated Poincare series") {
  const CuspSeed s = scalar_seed(4, "X11 + 0.5");
  const SiegelPoint z = point1(cplx(0.21, 0.83));
  const auto gens = generators(1);
  const auto ball = enumerate_ball(1, gens, 4, 2);

  const auto single = enumerate_ball(1, gens, 0, 1);
  CHECK(vec_rel(poincare_truncated(s, single, z).value, eval_f(s, z)) < 1e-15);

  GroupElementSet smaller = ball;
  const IMatrix dropped = smaller.elements.back();
  smaller.elements.pop_back();
  smaller.word_length.pop_back();
  const CVector diff = poincare_truncated(s, ball, z).value - poincare_truncated(s, smaller, z).value;
  const CVector term = slash_at(s.rep, as_function(s), to_real(dropped), z);
  CHECK((diff - term).norm() < 1e-12 * std::max(1.0, term.norm()));

  const IMatrix j = gens.front();
  const auto sym = symmetrize(ball, j);
  REQUIRE(sym.right_invariant(j));
  const VectorFunction series = [&](const SiegelPoint& p) { return poincare_truncated(s, sym, p).value; };
  Rng rng = make_rng(8, 0, 0);
  for (int i = 0; i < 10; ++i) {
    const SiegelPoint p = random_siegel_point(rng, 1);
    const CVector lhs = slash_at(s.rep, series, to_real(j), p);
    const CVector rhs = series(p);
    CHECK((lhs - rhs).norm() < 1e-9 * std::max(1.0, rhs.norm()));
  }

  const auto result = poincare_truncated(s, sym, z);
  std::size_t counted = 0;
  for (const auto& sh : result.shells) counted += sh.count;
  CHECK(counted == sym.size());
  CHECK(result.max_term_norm <= result.sum_term_norms);

  try {
    poincare_truncated(scalar_seed(2), single, z);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("integrab") != std::string::npos);
  }
}

TEST_CASE("truncated series for n = 2") {
  Rng rng = make_rng(9, 0, 0);
  const CuspSeed s = random_seed(rng, HighestWeight(2, {6, 5}), "1 + X12");
  const auto gens = generators(2);
  const auto sym = symmetrize(enumerate_ball(2, gens, 2, 1), gens.front());
  const VectorFunction series = [&](const SiegelPoint& p) { return poincare_truncated(s, sym, p).value; };
  for (int i = 0; i < 3; ++i) {
    const SiegelPoint p = random_siegel_point(rng, 2);
    const CVector rhs = series(p);
    CHECK((slash_at(s.rep, series, to_real(gens.front()), p) - rhs).norm() < 1e-9 * std::max(1.0, rhs.norm()));
  }
  // the lift of a finite series is the sum of the lifted terms
  const SymplecticMatrix g = random_symplectic(rng, 2, 0.7);
  CVector termwise = CVector::Zero(s.rep.dim());
  for (const auto& e : sym.elements) termwise += classical_lift(s.rep, as_function(s), to_real(e) * g);
  const CVector lifted = classical_lift(s.rep, series, g);
  CHECK((lifted - termwise).norm() < 1e-9 * std::max(1.0, termwise.norm()));
}

TEST_CASE("fourier orthogonality") {
  Rng rng = make_rng(10, 0, 0);
  struct Case {
    RMatrix t;
    long long level;
  };
  RMatrix t1(1, 1), t2(2, 2), t2b(2, 2);
  t1 << 2;
  t2 << 1, 0.5, 0.5, 2;
  t2b << 1, -0.5, -0.5, 0;
  for (const auto& c : {Case{t1, 1}, Case{t1, 3}, Case{t2, 1}, Case{t2b, 2}}) {
    const HalfIntegralMatrix t(c.t);
    const int n = t.n();
    const CVector v = random_vector(rng, 3);
    const double nl = static_cast<double>(c.level);
    const VectorFunction f = [&](const SiegelPoint& z) {
      return CVector(std::exp(2.0 * kPi * kI * t.pair(z.matrix()) / nl) * v);
    };
    FourierOptions fo;
    fo.points = n == 1 ? 64 : 16;
    const RMatrix y0 = RMatrix::Identity(n, n);
    const CVector a = fourier_coefficient(f, t, c.level, y0, fo);
    CHECK((a - v).norm() < 1e-8);
    RMatrix y1 = 0.6 * RMatrix::Identity(n, n);
    if (n == 2) y1(0, 1) = y1(1, 0) = 0.2;
    CHECK((fourier_coefficient(f, t, c.level, y1, fo) - a).norm() < 1e-7);

    RMatrix other = c.t;
    other(0, 0) += 1;
    CHECK(fourier_coefficient(f, HalfIntegralMatrix(other), c.level, y0, fo).norm() < 1e-8);
  }
  CHECK_THROWS_AS(HalfIntegralMatrix((RMatrix(1, 1) << 0.5).finished()), ConfigError);
  CHECK_THROWS_AS(HalfIntegralMatrix((RMatrix(2, 2) << 1, 0.25, 0.25, 1).finished()), ConfigError);
  const VectorFunction zero = [](const SiegelPoint&) { return CVector(CVector::Zero(1)); };
  FourierOptions big;
  big.points = 1000;
  CHECK_THROWS_AS(fourier_coefficient(zero, HalfIntegralMatrix(t2), 1, RMatrix::Identity(2, 2), big), ResourceError);
  CHECK_THROWS_AS(fourier_coefficient(zero, HalfIntegralMatrix(RMatrix::Identity(3, 3)), 1, RMatrix::Identity(3, 3)),
                  PreconditionError);
}

TEST_CASE("weight 12 series recovers the discriminant") {
  // The level-one cusp forms of weight 12 are multiples of Delta, so the
  // coefficient ratios of the series are tau(2)/tau(1) and tau(3)/tau(1).
  const CuspSeed s = scalar_seed(12);
  const auto ball = enumerate_ball(1, generators(1), 10, 1);
  const VectorFunction series = [&](const SiegelPoint& p) { return poincare_truncated(s, ball, p).value; };
  FourierOptions fo;
  fo.points = 32;
  std::vector<cplx> a;
  for (double t : {1.0, 2.0, 3.0})
    a.push_back(fourier_coefficient(series, HalfIntegralMatrix((RMatrix(1, 1) << t).finished()), 1,
                                    RMatrix::Identity(1, 1), fo)(0));
  CHECK(std::abs(a[1] / a[0] - cplx(-24.0)) < 1e-3);
  CHECK(std::abs(a[2] / a[0] - cplx(252.0)) < 1e-2);
}

TEST_CASE("petersson product") {
  const CuspSeed s1 = scalar_seed(4), s2 = scalar_seed(4, "X11 - 0.3");
  const VectorFunction f1 = as_function(s1), f2 = as_function(s2);
  McOptions mc;
  mc.samples = 50000;
  const auto self = petersson_inner_mc(f1, f1, s1.rep, mc);
  CHECK(self.value.real() > 0.0);
  CHECK(std::abs(self.value.imag()) < 1e-12);

  const cplx a(0.7, -1.3);
  const VectorFunction af1 = [&](const SiegelPoint& z) { return CVector(a * f1(z)); };
  const auto scaled = petersson_inner_mc(af1, f1, s1.rep, mc);
  CHECK(std::abs(scaled.value - a * self.value) < 1e-12 * std::abs(self.value));

  const auto ab = petersson_inner_mc(f1, f2, s1.rep, mc);
  const auto ba = petersson_inner_mc(f2, f1, s1.rep, mc);
  CHECK(std::abs(ab.value - std::conj(ba.value)) < 3.0 * std::hypot(ab.std_error, ba.std_error) + 1e-12);

  // hyperbolic area of the fundamental domain is pi/3; with the 1/2 prefactor,
  // <1, 1> = pi/6 for the trivial weight
  const PolyRep trivial = PolyRep::build(HighestWeight(1, {0}));
  const VectorFunction one = [](const SiegelPoint&) { return CVector(CVector::Ones(1)); };
  McOptions big = mc;
  big.samples = 400000;
  const auto area = petersson_inner_mc(one, one, trivial, big);
  CHECK(std::abs(area.value.real() - kPi / 6.0) < 3.0 * area.std_error);

  CHECK_THROWS_AS(petersson_inner_mc(f1, f1, PolyRep::build(HighestWeight(2, {3, 3})), mc), PreconditionError);
}

TEST_CASE("c_rho closed form") {
  for (int m : {3, 5}) {
    McOptions mc;
    mc.samples = 400000;
    mc.workers = 2;
    const auto est = c_rho(PolyRep::build(HighestWeight(1, {m})), mc);
    const double expect = 4.0 * kPi / (m - 1);
    CAPTURE(m);
    CAPTURE(est.value);
    CHECK(std::abs(est.value - expect) < 3.0 * est.std_error);
    CHECK(est.std_error / est.value < 0.01);
  }
  CHECK_THROWS_AS(c_rho(PolyRep::build(HighestWeight(1, {1})), McOptions{}), PreconditionError);
  CHECK_THROWS_AS(c_rho(PolyRep::build(HighestWeight(2, {3, 2})), McOptions{}), PreconditionError);
}

TEST_CASE("matrix coefficients") {
  McOptions mc;
  mc.samples = 200000;
  const CuspSeed s = scalar_seed(3);
  const CVector v = CVector::Ones(1);
  const auto at_identity = matrix_coefficient_mc(s, v, SymplecticMatrix::identity(1), mc);
  CHECK(std::abs(at_identity.value - cplx(2.0 * kPi)) < 3.0 * at_identity.std_error);

  // phase of the test vector and conjugate-linearity in the second slot
  const cplx phase = std::exp(kI * 0.8);
  const CuspSeed rotated(s.rep, s.mu, phase * v);
  const auto same = matrix_coefficient_mc(rotated, phase * v, SymplecticMatrix::identity(1), mc);
  CHECK(std::abs(same.value - at_identity.value) < 1e-12 * std::abs(at_identity.value));
  const cplx a(1.5, 0.4);
  const auto lin = matrix_coefficient_mc(s, a * v, SymplecticMatrix::identity(1), mc);
  CHECK(std::abs(lin.value - std::conj(a) * at_identity.value) < 1e-12 * std::abs(lin.value));

  Rng rng = make_rng(11, 0, 0);
  const double c = 2.0 * kPi;
  for (int i = 0; i < 3; ++i) {
    const SymplecticMatrix g = random_symplectic(rng, 1, 0.5);
    const auto est = matrix_coefficient_mc(s, v, g, mc);
    const cplx expect = matrix_coefficient_expected(s, v, g, c);
    CHECK(std::abs(est.value - expect) < 3.0 * est.std_error);
  }
}
