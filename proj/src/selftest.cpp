#include "siegel/selftest.hpp"

#include "siegel/autoforms.hpp"
#include "siegel/nonvanishing.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace siegel {

namespace {

CMatrix random_complex(Rng& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m + 2.0 * CMatrix::Identity(n, n);
}

CVector random_vector(Rng& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

double rel(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

struct Check {
  std::string name;
  std::function<double()> worst;  // returns the worst observed error
  double tol;
};

}  // namespace

nlohmann::json run_selftest(const SelftestOptions& opts) {
  Rng rng = make_rng(opts.seed, 0, 0);
  const std::vector<std::pair<int, std::vector<int>>> weights{
      {1, {3}}, {2, {1, 0}}, {2, {2, 1}}, {2, {3, 3}}, {3, {2, 1, 0}}, {3, {1, 1, 1}}};
  std::vector<PolyRep> reps;
  for (const auto& [n, w] : weights) reps.push_back(PolyRep::build(HighestWeight(n, w)));

  std::vector<Check> checks;
  checks.push_back({"rep.homomorphism", [&] {
                      double worst = 0;
                      for (const auto& rep : reps)
                        for (int i = 0; i < opts.draws; ++i) {
                          const CMatrix g = random_complex(rng, rep.n()), h = random_complex(rng, rep.n());
                          const CMatrix prod = rep.apply(g) * rep.apply(h);
                          worst = std::max(worst, (rep.apply(g * h) - prod).norm() / prod.norm());
                        }
                      return worst;
                    },
                    1e-9});
  checks.push_back({"rep.unitary", [&] {
                      double worst = 0;
                      for (const auto& rep : reps)
                        for (int i = 0; i < opts.draws; ++i)
                          worst = std::max(worst, unitarity_defect(rep.apply(haar_unitary(rng, rep.n()).matrix())));
                      return worst;
                    },
                    1e-10});
  checks.push_back({"rep.adjoint", [&] {
                      double worst = 0;
                      for (const auto& rep : reps)
                        for (int i = 0; i < opts.draws; ++i) {
                          const CMatrix g = random_complex(rng, rep.n());
                          const CVector a = random_vector(rng, rep.dim()), b = random_vector(rng, rep.dim());
                          const cplx lhs = b.dot(rep.apply(g) * a);
                          const cplx rhs = (rep.apply(g.adjoint()) * b).dot(a);
                          worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
                        }
                      return worst;
                    },
                    1e-10});
  checks.push_back({"rep.sqrt", [&] {
                      double worst = 0;
                      for (const auto& rep : reps)
                        for (int i = 0; i < opts.draws; ++i) {
                          const CMatrix a = random_complex(rng, rep.n());
                          const CMatrix y = a * a.adjoint() + CMatrix::Identity(rep.n(), rep.n());
                          const CMatrix s = rep.apply_sqrt(y);
                          worst = std::max(worst, rel(s * s, rep.apply(y)));
                        }
                      return worst;
                    },
                    1e-9});
  checks.push_back({"rep.weyl_dimension", [&] {
                      double worst = 0;
                      for (const auto& rep : reps)
                        worst = std::max(worst, std::abs(static_cast<double>(rep.dim() - weyl_dimension(rep.weight()))));
                      return worst;
                    },
                    0.0});
  checks.push_back({"geometry.action_law", [&] {
                      double worst = 0;
                      for (int n : {1, 2})
                        for (int i = 0; i < opts.draws; ++i) {
                          const auto g = random_symplectic(rng, n, 1.0), h = random_symplectic(rng, n, 1.0);
                          const auto z = random_siegel_point(rng, n);
                          worst = std::max(worst, rel(moebius(g, moebius(h, z)).matrix(), moebius(g * h, z).matrix()));
                          worst = std::max(worst, rel(imag_transform(g, z).cast<cplx>(), moebius(g, z).y().cast<cplx>()));
                        }
                      return worst;
                    },
                    1e-9});
  checks.push_back({"geometry.factorizations", [&] {
                      double worst = 0;
                      for (int n : {1, 2, 3})
                        for (int i = 0; i < opts.draws; ++i) {
                          const auto g = random_symplectic(rng, n, 1.5);
                          worst = std::max(worst, rel(kak_factorize(g).reconstruct().matrix().cast<cplx>(), g.matrix().cast<cplx>()));
                          worst = std::max(worst, rel(nak_factorize(g).reconstruct().matrix().cast<cplx>(), g.matrix().cast<cplx>()));
                          const auto z = random_siegel_point(rng, n);
                          worst = std::max(worst, rel(inverse_cayley(cayley(z)).matrix(), z.matrix()));
                        }
                      return worst;
                    },
                    1e-9});
  checks.push_back({"lift.closed_form", [&] {
                      double worst = 0;
                      for (const auto& rep : reps) {
                        if (rep.n() > 2) continue;
                        const CuspSeed seed(rep, parse_mu(rep.n() == 1 ? "1 + X11^2" : "det + X12", rep.n()),
                                            random_vector(rng, rep.dim()));
                        for (int i = 0; i < opts.draws; ++i) {
                          const auto g = random_symplectic(rng, rep.n(), 1.0);
                          const CVector a = classical_lift(seed, g);
                          worst = std::max(worst, rel(a, lift_closed_form(seed, kak_factorize(g))));
                        }
                      }
                      return worst;
                    },
                    1e-9});
  checks.push_back({"enumeration.equivariance", [&] {
                      const PolyRep rep = PolyRep::build(HighestWeight(1, {4}));
                      const CuspSeed seed(rep, MatrixPolynomial::constant(1, 1.0), CVector::Ones(1));
                      const auto ball = enumerate_ball(1, generators(1), 4, 2);
                      const IMatrix j = generators(1).front();
                      const auto sym = symmetrize(ball, j);
                      if (!sym.right_invariant(j)) return 1.0;
                      const SiegelPoint z(CMatrix::Constant(1, 1, cplx(0.2, 1.3)));
                      const CVector p = poincare_truncated(seed, sym, z).value;
                      const SymplecticMatrix gj = to_real(j);
                      const CVector pj = slash_at(rep, [&](const SiegelPoint& w) { return poincare_truncated(seed, sym, w).value; }, gj, z);
                      return rel(pj, p);
                    },
                    1e-9});
  checks.push_back({"nonvanishing.scalar_threshold", [&] {
                      const PolyRep rep = PolyRep::build(HighestWeight(1, {4}));
                      McOptions mc;
                      mc.samples = opts.samples;
                      mc.seed = opts.seed;
                      mc.workers = opts.workers;
                      const NonvanishingProblem p(CuspSeed(rep, MatrixPolynomial::constant(1, 1.0), CVector::Ones(1)), mc);
                      const auto r = find_n0(p);
                      return r.n0 && *r.n0 == 6 ? 0.0 : 1.0;
                    },
                    0.0});
  checks.push_back({"autoforms.c_rho", [&] {
                      const PolyRep rep = PolyRep::build(HighestWeight(1, {3}));
                      McOptions mc;
                      mc.samples = opts.samples;
                      mc.seed = opts.seed;
                      mc.workers = opts.workers;
                      const auto e = c_rho(rep, mc);
                      return std::abs(e.value - 2.0 * std::numbers::pi) / e.std_error;
                    },
                    3.0});

  nlohmann::json report;
  report["checks"] = nlohmann::json::array();
  bool passed = true;
  for (const auto& c : checks) {
    double worst = 0.0;
    std::string error;
    try {
      worst = c.worst();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && worst <= c.tol;
    passed = passed && ok;
    nlohmann::json row{{"name", c.name}, {"worst", worst}, {"tolerance", c.tol}, {"passed", ok}};
    if (!error.empty()) row["error"] = error;
    report["checks"].push_back(row);
  }
  report["seed"] = opts.seed;
  report["passed"] = passed;
  return report;
}

}  // namespace siegel
