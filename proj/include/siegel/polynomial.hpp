#pragma once

#include "siegel/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace siegel {

/// Polynomial in the n^2 entries X_{r,s} of a matrix, with complex
/// coefficients. Exponents are stored row-major (index r*n + s).
class MatrixPolynomial {
 public:
  using Exponents = std::vector<int>;

  explicit MatrixPolynomial(int n);

  static MatrixPolynomial constant(int n, cplx c);
  /// X_{r,s}, zero-based indices.
  static MatrixPolynomial variable(int n, int r, int s);
  static MatrixPolynomial determinant(int n);

  int n() const noexcept { return n_; }
  const std::map<Exponents, cplx>& monomials() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const;

  cplx evaluate(const CMatrix& w) const;

  MatrixPolynomial operator+(const MatrixPolynomial& o) const;
  MatrixPolynomial operator-(const MatrixPolynomial& o) const;
  MatrixPolynomial operator*(const MatrixPolynomial& o) const;
  MatrixPolynomial operator*(cplx c) const;
  MatrixPolynomial pow(int e) const;

  bool operator==(const MatrixPolynomial&) const = default;

  /// Canonical text, accepted by parse_mu.
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, cplx c);
  void check_same_n(const MatrixPolynomial& o) const;

  int n_;
  std::map<Exponents, cplx> terms_;
};

/// Grammar: sums and products of numbers, `i`, X<r><s> (one-based digits),
/// `det`, parentheses and `^` with a nonnegative integer exponent.
/// Throws ConfigError with the offending position.
MatrixPolynomial parse_mu(const std::string& text, int n);

}  // namespace siegel
