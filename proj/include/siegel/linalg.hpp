#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace siegel {

using cplx = std::complex<double>;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

// Error families. The CLI maps each family to its own exit code.
enum class ErrorKind { Config = 2, Precondition = 3, Undecided = 4, ResourceCap = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::Precondition, what) {}
};
struct ResourceError : Error {
  explicit ResourceError(const std::string& what) : Error(ErrorKind::ResourceCap, what) {}
};

// Eigenvalues below this are clamped before taking square roots.
inline constexpr double kEigenClamp = 1e-14;

/// Positive square root of a Hermitian positive (semi)definite matrix.
CMatrix hermitian_sqrt(const CMatrix& h);
RMatrix symmetric_sqrt(const RMatrix& s);

/// Smallest eigenvalue of the Hermitian part of `h`.
double min_hermitian_eigenvalue(const CMatrix& h);

/// 2-norm condition number; +inf for a singular matrix.
double condition_number(const CMatrix& m);

/// Nearest unitary matrix (polar factor).
CMatrix unitary_polar(const CMatrix& m);

double unitarity_defect(const CMatrix& u);

/// Largest absolute entry of a - b, scaled by max(1, |b|_max).
double relative_diff(const CMatrix& a, const CMatrix& b);

}  // namespace siegel
