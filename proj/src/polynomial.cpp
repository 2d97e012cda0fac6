#include "siegel/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace siegel {

namespace {

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string coefficient_text(cplx c) {
  if (c.imag() == 0.0) return shortest(c.real());
  std::string s = "(";
  if (c.real() != 0.0) {
    s += shortest(c.real());
    s += c.imag() < 0 ? " - " : " + ";
    s += shortest(std::abs(c.imag()));
  } else {
    s += shortest(c.imag());
  }
  return s + "*i)";
}

class Parser {
 public:
  Parser(const std::string& text, int n) : s_(text), n_(n) {}

  MatrixPolynomial parse() {
    MatrixPolynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "mu: " << msg << " at position " << pos_;
    throw ConfigError(os.str());
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MatrixPolynomial expr() {
    MatrixPolynomial p = term();
    for (;;) {
      if (accept('+')) {
        p = p + term();
      } else if (accept('-')) {
        p = p - term();
      } else {
        return p;
      }
    }
  }

  MatrixPolynomial term() {
    MatrixPolynomial p = unary();
    while (accept('*')) p = p * unary();
    return p;
  }

  MatrixPolynomial unary() {
    if (accept('-')) return unary() * cplx(-1.0);
    if (accept('+')) return unary();
    return power();
  }

  MatrixPolynomial power() {
    MatrixPolynomial base = atom();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected nonnegative integer exponent");
    int e = 0;
    auto res = std::from_chars(s_.data() + start, s_.data() + pos_, e);
    if (res.ec != std::errc() || e > 64) fail("exponent out of range");
    return base.pow(e);
  }

  MatrixPolynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MatrixPolynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double x = 0.0;
      auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), x);
      if (res.ec != std::errc()) fail("malformed number");
      pos_ = static_cast<std::size_t>(res.ptr - s_.data());
      return MatrixPolynomial::constant(n_, x);
    }
    if (s_.compare(pos_, 3, "det") == 0) {
      pos_ += 3;
      return MatrixPolynomial::determinant(n_);
    }
    if (c == 'i') {
      ++pos_;
      return MatrixPolynomial::constant(n_, kI);
    }
    if (c == 'X') {
      ++pos_;
      if (pos_ + 2 > s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
        fail("expected two index digits after X");
      const int r = s_[pos_] - '0';
      const int col = s_[pos_ + 1] - '0';
      if (r < 1 || r > n_ || col < 1 || col > n_) fail("index out of range for n=" + std::to_string(n_));
      pos_ += 2;
      return MatrixPolynomial::variable(n_, r - 1, col - 1);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

MatrixPolynomial::MatrixPolynomial(int n) : n_(n) {
  if (n < 1) throw ConfigError("polynomial: n must be positive");
}

MatrixPolynomial MatrixPolynomial::constant(int n, cplx c) {
  MatrixPolynomial p(n);
  p.add_term(Exponents(static_cast<std::size_t>(n * n), 0), c);
  return p;
}

MatrixPolynomial MatrixPolynomial::variable(int n, int r, int s) {
  if (r < 0 || r >= n || s < 0 || s >= n) throw ConfigError("polynomial: variable index out of range");
  MatrixPolynomial p(n);
  Exponents e(static_cast<std::size_t>(n * n), 0);
  e[static_cast<std::size_t>(r * n + s)] = 1;
  p.add_term(e, 1.0);
  return p;
}

MatrixPolynomial MatrixPolynomial::determinant(int n) {
  MatrixPolynomial p(n);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    Exponents e(static_cast<std::size_t>(n * n), 0);
    for (int r = 0; r < n; ++r) e[static_cast<std::size_t>(r * n + perm[static_cast<std::size_t>(r)])] = 1;
    p.add_term(e, inversions % 2 ? -1.0 : 1.0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

void MatrixPolynomial::add_term(const Exponents& e, cplx c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0.0) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

void MatrixPolynomial::check_same_n(const MatrixPolynomial& o) const {
  if (o.n_ != n_) throw ConfigError("polynomial: mismatched matrix size");
}

int MatrixPolynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

cplx MatrixPolynomial::evaluate(const CMatrix& w) const {
  if (w.rows() != n_ || w.cols() != n_) throw PreconditionError("polynomial: matrix size mismatch");
  cplx sum = 0.0;
  for (const auto& [e, c] : terms_) {
    cplx term = c;
    for (int k = 0; k < n_ * n_; ++k) {
      const cplx x = w(k / n_, k % n_);
      for (int j = 0; j < e[static_cast<std::size_t>(k)]; ++j) term *= x;
    }
    sum += term;
  }
  return sum;
}

MatrixPolynomial MatrixPolynomial::operator+(const MatrixPolynomial& o) const {
  check_same_n(o);
  MatrixPolynomial p = *this;
  for (const auto& [e, c] : o.terms_) p.add_term(e, c);
  return p;
}

MatrixPolynomial MatrixPolynomial::operator-(const MatrixPolynomial& o) const { return *this + o * cplx(-1.0); }

MatrixPolynomial MatrixPolynomial::operator*(const MatrixPolynomial& o) const {
  check_same_n(o);
  MatrixPolynomial p(n_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exponents e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      p.add_term(e, ca * cb);
    }
  return p;
}

MatrixPolynomial MatrixPolynomial::operator*(cplx c) const {
  MatrixPolynomial p(n_);
  for (const auto& [e, a] : terms_) p.add_term(e, a * c);
  return p;
}

MatrixPolynomial MatrixPolynomial::pow(int e) const {
  if (e < 0) throw ConfigError("polynomial: negative exponent");
  MatrixPolynomial p = constant(n_, 1.0);
  for (int k = 0; k < e; ++k) p = p * *this;
  return p;
}

std::string MatrixPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (int k = 0; k < n_ * n_; ++k) {
      const int p = e[static_cast<std::size_t>(k)];
      if (p == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "X" + std::to_string(k / n_ + 1) + std::to_string(k % n_ + 1);
      if (p > 1) mono += "^" + std::to_string(p);
    }
    cplx coef = c;
    if (!first) {
      if (coef.imag() == 0.0 && coef.real() < 0) {
        out += " - ";
        coef = -coef;
      } else {
        out += " + ";
      }
    }
    first = false;
    if (mono.empty()) {
      out += coefficient_text(coef);
    } else if (coef == 1.0) {
      out += mono;
    } else if (coef == -1.0) {
      out += "-" + mono;
    } else {
      out += coefficient_text(coef) + "*" + mono;
    }
  }
  return out;
}

MatrixPolynomial parse_mu(const std::string& text, int n) { return Parser(text, n).parse(); }

}  // namespace siegel
