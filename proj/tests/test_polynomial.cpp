#include "doctest.h"
#include "test_support.hpp"

#include "siegel/polynomial.hpp"

using namespace siegel;
using namespace testing;

TEST_CASE("parse examples") {
  const MatrixPolynomial one = parse_mu("1", 2);
  CHECK(one == MatrixPolynomial::constant(2, 1.0));
  CHECK(one.degree() == 0);

  const MatrixPolynomial x = parse_mu("X11", 1);
  CHECK(x == MatrixPolynomial::variable(1, 0, 0));
  CHECK(x.evaluate(CMatrix::Constant(1, 1, cplx(0.5, 0.25))) == cplx(0.5, 0.25));

  const MatrixPolynomial det = parse_mu("det", 2);
  const MatrixPolynomial expanded = parse_mu("X11*X22 - X12*X21", 2);
  CHECK(det == expanded);
  CHECK(det.monomials().size() == 2);
}

TEST_CASE("evaluation matches the matrix determinant") {
  Rng rng = make_rng(1, 0, 0);
  for (int n : {1, 2, 3}) {
    const MatrixPolynomial det = MatrixPolynomial::determinant(n);
    for (int i = 0; i < 10; ++i) {
      const CMatrix w = random_complex(rng, n, n);
      CHECK(std::abs(det.evaluate(w) - w.determinant()) < 1e-12 * std::max(1.0, std::abs(w.determinant())));
    }
  }
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = cplx(0.1, 0.2);
  CHECK(std::abs(parse_mu("det", 2).evaluate(d) - 0.3 * cplx(0.1, 0.2)) < 1e-15);
}

TEST_CASE("grammar") {
  const MatrixPolynomial p = parse_mu("2*X11^2*X22 + (1 - i)*X12 - 3", 2);
  CMatrix w(2, 2);
  w << cplx(1, 1), 2.0, 0.5, cplx(0, -1);
  const cplx expect = 2.0 * w(0, 0) * w(0, 0) * w(1, 1) + cplx(1, -1) * w(0, 1) - 3.0;
  CHECK(std::abs(p.evaluate(w) - expect) < 1e-14);
  CHECK(p.degree() == 3);
  CHECK(parse_mu("(X11 + X22)^2", 2) == parse_mu("X11^2 + 2*X11*X22 + X22^2", 2));
  CHECK(parse_mu("X11 - X11", 1).is_zero());
  CHECK(parse_mu("-X11", 1) == MatrixPolynomial::variable(1, 0, 0) * cplx(-1.0));
  CHECK(parse_mu(" 1.5e1 * X11 ", 1) == MatrixPolynomial::variable(1, 0, 0) * cplx(15.0));
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_AS(parse_mu("X13", 2), ConfigError);
  CHECK_THROWS_AS(parse_mu("X11 +", 1), ConfigError);
  CHECK_THROWS_AS(parse_mu("(X11", 1), ConfigError);
  CHECK_THROWS_AS(parse_mu("X11^-1", 1), ConfigError);
  CHECK_THROWS_AS(parse_mu("Y11", 1), ConfigError);
  try {
    parse_mu("X11 * * X11", 1);
    FAIL("expected a syntax error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("position 6") != std::string::npos);
  }
}

TEST_CASE("parse-print-parse fixpoint") {
  const std::vector<std::pair<std::string, int>> cases{
      {"1", 1},
      {"0", 2},
      {"X11", 1},
      {"det", 2},
      {"det", 3},
      {"X11^2*X22", 2},
      {"0.1*X11 - 1/3", 1},
      {"(0.3 - 2.5*i)*X12*X21 + i - X22^3", 2},
      {"-(X11 + 0.7)^3", 1},
      {"(-1.25 + 1e-7*i)*X11", 1},
  };
  for (const auto& [text, n] : cases) {
    CAPTURE(text);
    if (text.find('/') != std::string::npos) {
      CHECK_THROWS_AS(parse_mu(text, n), ConfigError);
      continue;
    }
    const MatrixPolynomial p = parse_mu(text, n);
    const std::string printed = p.to_string();
    const MatrixPolynomial q = parse_mu(printed, n);
    CHECK(q == p);
    CHECK(q.to_string() == printed);
  }
  CHECK(MatrixPolynomial::determinant(2).to_string() == "-X12*X21 + X11*X22");
}

TEST_CASE("random polynomials round trip") {
  Rng rng = make_rng(2, 0, 0);
  std::uniform_int_distribution<int> var(0, 3), ex(0, 3);
  std::normal_distribution<double> coef(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    MatrixPolynomial p(2);
    for (int t = 0; t < 4; ++t) {
      MatrixPolynomial m = MatrixPolynomial::constant(2, cplx(coef(rng), trial % 2 ? coef(rng) : 0.0));
      for (int k = 0; k < 3; ++k) {
        const int v = var(rng);
        m = m * MatrixPolynomial::variable(2, v / 2, v % 2).pow(ex(rng));
      }
      p = p + m;
    }
    CHECK(parse_mu(p.to_string(), 2) == p);
  }
}

TEST_CASE("mismatched sizes") {
  CHECK_THROWS_AS(MatrixPolynomial::constant(1, 1.0) + MatrixPolynomial::constant(2, 1.0), ConfigError);
  CHECK_THROWS_AS(parse_mu("X11", 1).evaluate(CMatrix::Identity(2, 2)), PreconditionError);
}
