#pragma once

#include "siegel/linalg.hpp"

#include "json.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace siegel {

/// Highest weight (omega_1 >= ... >= omega_n >= 0) of a polynomial
/// representation of GL_n(C).
class HighestWeight {
 public:
  HighestWeight(int n, std::vector<int> omega);

  int n() const noexcept { return n_; }
  const std::vector<int>& omega() const noexcept { return omega_; }
  int operator[](int r) const { return omega_[static_cast<std::size_t>(r)]; }
  int last() const noexcept { return omega_.back(); }

  /// The partition omega - omega_n (1, ..., 1).
  std::vector<int> shape() const;
  int tensor_degree() const;

  bool operator==(const HighestWeight&) const = default;

 private:
  int n_;
  std::vector<int> omega_;
};

/// Exact Weyl dimension prod_{r<s} (w_r - w_s + s - r) / (s - r).
std::int64_t weyl_dimension(const HighestWeight& w);

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(CMatrix u, double tol = 1e-10);
  static UnitaryMatrix identity(int n) { return UnitaryMatrix(CMatrix::Identity(n, n)); }

  int n() const noexcept { return static_cast<int>(u_.rows()); }
  const CMatrix& matrix() const noexcept { return u_; }

 private:
  CMatrix u_;
};

struct BuildOptions {
  int max_n = 3;
  int max_degree = 8;
};

/// An irreducible polynomial representation of GL_n(C), realized as
/// det^{omega_n} times the Schur module of shape omega - omega_n inside the
/// k-fold tensor power of C^n. The basis is orthonormal for the standard
/// inner product on the tensor power, so the restriction to U(n) is unitary.
///
/// Vectors of the representation space are coordinate vectors (length dim())
/// in the weight basis. Cheap to copy; the data is shared and immutable.
class PolyRep {
 public:
  static PolyRep build(const HighestWeight& omega, const BuildOptions& opts = {});

  int n() const noexcept { return data_->weight.n(); }
  int dim() const noexcept { return static_cast<int>(data_->basis.cols()); }
  int tensor_degree() const noexcept { return data_->weight.tensor_degree(); }
  int det_twist() const noexcept { return data_->weight.last(); }
  const HighestWeight& weight() const noexcept { return data_->weight; }

  /// n^k x dim matrix with orthonormal columns.
  const CMatrix& basis_embedding() const noexcept { return data_->basis; }
  const std::vector<std::vector<int>>& weight_labels() const noexcept { return data_->labels; }
  int hwv_index() const noexcept { return data_->hwv_index; }

  /// rho(g) = det(g)^{omega_n} B^* g^{(x)k} B.
  CMatrix apply(const CMatrix& g) const;
  /// rho(y)^{1/2} for Hermitian positive definite y, computed as rho(y^{1/2}).
  CMatrix apply_sqrt(const CMatrix& y) const;
  /// sigma_K(k_u) = rho(conj(u)).
  CMatrix eval_sigma(const UnitaryMatrix& u) const;
  CVector highest_weight_vector() const;

  nlohmann::json to_json() const;
  static PolyRep from_json(const nlohmann::json& j);

 private:
  struct Data {
    HighestWeight weight;
    CMatrix basis;
    std::vector<std::vector<int>> labels;
    int hwv_index = 0;
  };
  explicit PolyRep(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

}  // namespace siegel
