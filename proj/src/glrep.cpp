#include "siegel/glrep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace siegel {

namespace {

using Perm = std::vector<int>;

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// All permutations of `boxes` (positions), as full permutations of [0, k)
// that fix everything outside `boxes`, composed over each group in `groups`.
// Returns (perm, sign) pairs.
std::vector<std::pair<Perm, int>> product_group(int k, const std::vector<std::vector<int>>& groups,
                                                bool with_sign) {
  std::vector<std::pair<Perm, int>> result;
  Perm id(static_cast<std::size_t>(k));
  std::iota(id.begin(), id.end(), 0);
  result.emplace_back(id, 1);
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    std::vector<int> images = g;
    std::sort(images.begin(), images.end());
    std::vector<std::pair<Perm, int>> local;
    do {
      // parity of the arrangement `images` relative to sorted g
      int inversions = 0;
      for (std::size_t a = 0; a < images.size(); ++a)
        for (std::size_t b = a + 1; b < images.size(); ++b)
          if (images[a] > images[b]) ++inversions;
      Perm p = id;
      for (std::size_t a = 0; a < g.size(); ++a) p[static_cast<std::size_t>(g[a])] = images[a];
      local.emplace_back(std::move(p), (with_sign && inversions % 2) ? -1 : 1);
    } while (std::next_permutation(images.begin(), images.end()));

    std::vector<std::pair<Perm, int>> next;
    next.reserve(result.size() * local.size());
    for (const auto& [p, sp] : result) {
      for (const auto& [q, sq] : local) {
        Perm c(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
        next.emplace_back(std::move(c), sp * sq);
      }
    }
    result = std::move(next);
  }
  return result;
}

void compositions(int k, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(k);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = k; a >= 0; --a) {
    cur.push_back(a);
    compositions(k - a, parts, cur, out);
    cur.pop_back();
  }
}

// Applies g to tensor mode `mode` of every column of x (n^k rows).
void mode_product(CMatrix& x, const CMatrix& g, int n, int k, int mode) {
  const std::int64_t stride = ipow(n, k - 1 - mode);
  const std::int64_t outer = ipow(n, mode);
  CMatrix block(n, x.cols());
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t in = 0; in < stride; ++in) {
      const std::int64_t base = o * n * stride + in;
      for (int b = 0; b < n; ++b) block.row(b) = x.row(base + b * stride);
      const CMatrix mixed = g * block;
      for (int a = 0; a < n; ++a) x.row(base + a * stride) = mixed.row(a);
    }
  }
}

}  // namespace

HighestWeight::HighestWeight(int n, std::vector<int> omega) : n_(n), omega_(std::move(omega)) {
  if (n_ < 1) throw ConfigError("highest weight: n must be positive");
  if (static_cast<int>(omega_.size()) != n_) {
    std::ostringstream os;
    os << "highest weight: expected " << n_ << " entries, got " << omega_.size();
    throw ConfigError(os.str());
  }
  for (int r = 0; r + 1 < n_; ++r)
    if (omega_[static_cast<std::size_t>(r)] < omega_[static_cast<std::size_t>(r + 1)])
      throw ConfigError("highest weight must be non-increasing");
  if (omega_.back() < 0) throw ConfigError("highest weight must be non-negative");
}

std::vector<int> HighestWeight::shape() const {
  std::vector<int> s;
  for (int w : omega_)
    if (w - last() > 0) s.push_back(w - last());
  return s;
}

int HighestWeight::tensor_degree() const {
  int k = 0;
  for (int w : omega_) k += w - last();
  return k;
}

std::int64_t weyl_dimension(const HighestWeight& w) {
  __int128 num = 1;
  __int128 den = 1;
  const int n = w.n();
  for (int r = 0; r < n; ++r) {
    for (int s = r + 1; s < n; ++s) {
      if (num > (__int128{1} << 90)) throw ResourceError("weyl_dimension: overflow");
      num *= (w[r] - w[s] + s - r);
      den *= (s - r);
    }
  }
  return static_cast<std::int64_t>(num / den);
}

UnitaryMatrix::UnitaryMatrix(CMatrix u, double tol) : u_(std::move(u)) {
  if (u_.rows() != u_.cols()) throw PreconditionError("unitary matrix must be square");
  if (unitarity_defect(u_) > tol) throw PreconditionError("matrix is not unitary");
}

PolyRep PolyRep::build(const HighestWeight& omega, const BuildOptions& opts) {
  const int n = omega.n();
  const int k = omega.tensor_degree();
  if (n > opts.max_n) {
    std::ostringstream os;
    os << "representation: n = " << n << " exceeds the configured maximum " << opts.max_n;
    throw ResourceError(os.str());
  }
  if (k > opts.max_degree) {
    std::ostringstream os;
    os << "representation: tensor space C^" << n << "^(x)" << k << " of dimension " << ipow(n, k)
       << " exceeds the configured budget (max degree " << opts.max_degree << ")";
    throw ResourceError(os.str());
  }

  const std::int64_t total = ipow(n, k);
  const std::vector<int> shape = omega.shape();

  // Boxes in row-reading order; rows and columns as position groups.
  std::vector<std::vector<int>> rows, cols;
  {
    int pos = 0;
    for (int len : shape) {
      std::vector<int> row;
      for (int c = 0; c < len; ++c) {
        row.push_back(pos);
        if (static_cast<int>(cols.size()) <= c) cols.emplace_back();
        cols[static_cast<std::size_t>(c)].push_back(pos);
        ++pos;
      }
      rows.push_back(std::move(row));
    }
  }
  const auto row_group = product_group(k, rows, false);
  const auto col_group = product_group(k, cols, true);

  auto decode = [&](std::int64_t code) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int p = k - 1; p >= 0; --p) {
      idx[static_cast<std::size_t>(p)] = static_cast<int>(code % n);
      code /= n;
    }
    return idx;
  };
  auto encode = [&](const std::vector<int>& idx) {
    std::int64_t c = 0;
    for (int v : idx) c = c * n + v;
    return c;
  };

  // Group all tensor basis indices by content (= torus weight).
  std::vector<std::vector<int>> contents;
  {
    std::vector<int> cur;
    compositions(k, n, cur, contents);  // descending lexicographic order
  }
  std::vector<std::vector<std::int64_t>> members(contents.size());
  std::vector<int> local(static_cast<std::size_t>(total), -1);
  for (std::int64_t code = 0; code < total; ++code) {
    const auto idx = decode(code);
    std::vector<int> content(static_cast<std::size_t>(n), 0);
    for (int v : idx) ++content[static_cast<std::size_t>(v)];
    const auto it = std::find(contents.begin(), contents.end(), content);
    const auto w = static_cast<std::size_t>(it - contents.begin());
    local[static_cast<std::size_t>(code)] = static_cast<int>(members[w].size());
    members[w].push_back(code);
  }

  std::vector<RVector> columns;
  std::vector<std::vector<int>> labels;
  for (std::size_t w = 0; w < contents.size(); ++w) {
    const auto& codes = members[w];
    const auto W = static_cast<Eigen::Index>(codes.size());
    RMatrix images = RMatrix::Zero(W, W);
    std::vector<int> permuted(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < W; ++j) {
      const auto idx = decode(codes[static_cast<std::size_t>(j)]);
      // row symmetrizer
      std::vector<std::pair<std::vector<int>, double>> sym;
      for (const auto& [p, sign] : row_group) {
        (void)sign;
        for (int q = 0; q < k; ++q)
          permuted[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(p[static_cast<std::size_t>(q)])];
        sym.emplace_back(permuted, 1.0);
      }
      // column antisymmetrizer
      for (const auto& [t, coef] : sym) {
        for (const auto& [p, sign] : col_group) {
          for (int q = 0; q < k; ++q)
            permuted[static_cast<std::size_t>(q)] = t[static_cast<std::size_t>(p[static_cast<std::size_t>(q)])];
          images(local[static_cast<std::size_t>(encode(permuted))], j) += sign * coef;
        }
      }
    }
    if (images.cwiseAbs().maxCoeff() == 0.0) continue;
    Eigen::BDCSVD<RMatrix> svd(images, Eigen::ComputeThinU);
    const RVector& s = svd.singularValues();
    const double cutoff = 1e-9 * s(0);
    for (Eigen::Index c = 0; c < s.size() && s(c) > cutoff; ++c) {
      RVector col = RVector::Zero(total);
      RVector u = svd.matrixU().col(c);
      for (Eigen::Index a = 0; a < u.size(); ++a)
        if (std::abs(u(a)) > 1e-12) {
          if (u(a) < 0) u = -u;
          break;
        }
      for (Eigen::Index a = 0; a < W; ++a) col(codes[static_cast<std::size_t>(a)]) = u(a);
      columns.push_back(std::move(col));
      std::vector<int> label = contents[w];
      for (auto& l : label) l += omega.last();
      labels.push_back(std::move(label));
    }
  }

  const std::int64_t expected = weyl_dimension(omega);
  if (static_cast<std::int64_t>(columns.size()) != expected) {
    std::ostringstream os;
    os << "representation: constructed dimension " << columns.size() << " differs from Weyl dimension "
       << expected;
    throw std::logic_error(os.str());
  }

  auto data = std::make_shared<Data>(Data{omega, CMatrix(total, static_cast<Eigen::Index>(columns.size())),
                                          std::move(labels), 0});
  for (std::size_t c = 0; c < columns.size(); ++c)
    data->basis.col(static_cast<Eigen::Index>(c)) = columns[c].cast<cplx>();
  // contents were generated in descending lexicographic order, so the
  // highest weight is the first label
  data->hwv_index = 0;
  return PolyRep(std::move(data));
}

CMatrix PolyRep::apply(const CMatrix& g) const {
  const int n = this->n();
  if (g.rows() != n || g.cols() != n) {
    std::ostringstream os;
    os << "apply: expected a " << n << "x" << n << " matrix, got " << g.rows() << "x" << g.cols();
    throw PreconditionError(os.str());
  }
  const int k = tensor_degree();
  CMatrix x = data_->basis;
  for (int mode = 0; mode < k; ++mode) mode_product(x, g, n, k, mode);
  CMatrix r = data_->basis.adjoint() * x;
  if (det_twist() != 0) r *= std::pow(g.determinant(), det_twist());
  return r;
}

CMatrix PolyRep::apply_sqrt(const CMatrix& y) const {
  if (y.rows() != n() || y.cols() != n()) throw PreconditionError("apply_sqrt: dimension mismatch");
  const double herm = (y - y.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  if (herm > 1e-10 * scale) throw PreconditionError("apply_sqrt: matrix is not Hermitian");
  const double lmin = min_hermitian_eigenvalue(y);
  if (!(lmin > 1e-14 * scale)) {
    std::ostringstream os;
    os << "apply_sqrt: matrix is not positive definite (min eigenvalue " << lmin << ")";
    throw PreconditionError(os.str());
  }
  return apply(hermitian_sqrt(y));
}

CMatrix PolyRep::eval_sigma(const UnitaryMatrix& u) const {
  if (u.n() != n()) throw PreconditionError("eval_sigma: dimension mismatch");
  return apply(u.matrix().conjugate());
}

CVector PolyRep::highest_weight_vector() const {
  CVector v = CVector::Zero(dim());
  v(hwv_index()) = 1.0;
  return v;
}

nlohmann::json PolyRep::to_json() const {
  nlohmann::json j;
  j["format"] = "siegel-polyrep";
  j["version"] = 1;
  j["n"] = n();
  j["omega"] = weight().omega();
  j["dim"] = dim();
  j["tensor_degree"] = tensor_degree();
  j["hwv_index"] = hwv_index();
  j["weight_labels"] = weight_labels();
  nlohmann::json cols = nlohmann::json::array();
  for (Eigen::Index c = 0; c < data_->basis.cols(); ++c) {
    nlohmann::json col = nlohmann::json::array();
    for (Eigen::Index r = 0; r < data_->basis.rows(); ++r)
      col.push_back({data_->basis(r, c).real(), data_->basis(r, c).imag()});
    cols.push_back(std::move(col));
  }
  j["basis_embedding"] = std::move(cols);
  return j;
}

PolyRep PolyRep::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "siegel-polyrep") throw ConfigError("not a serialized representation");
    if (j.at("version").get<int>() != 1) throw ConfigError("unsupported representation format version");
    HighestWeight w(j.at("n").get<int>(), j.at("omega").get<std::vector<int>>());
    const auto& cols = j.at("basis_embedding");
    const int dim = j.at("dim").get<int>();
    if (static_cast<int>(cols.size()) != dim) throw ConfigError("basis_embedding has wrong column count");
    std::int64_t rows = 1;
    for (int i = 0; i < w.tensor_degree(); ++i) rows *= w.n();
    CMatrix basis(rows, dim);
    for (int c = 0; c < dim; ++c) {
      const auto& col = cols[static_cast<std::size_t>(c)];
      if (static_cast<std::int64_t>(col.size()) != rows) throw ConfigError("basis_embedding has wrong row count");
      for (std::int64_t r = 0; r < rows; ++r)
        basis(r, c) = cplx(col[static_cast<std::size_t>(r)][0].get<double>(), col[static_cast<std::size_t>(r)][1].get<double>());
    }
    auto labels = j.at("weight_labels").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(labels.size()) != dim) throw ConfigError("weight_labels has wrong length");
    return PolyRep(std::make_shared<Data>(Data{w, std::move(basis), std::move(labels), j.at("hwv_index").get<int>()}));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed representation: ") + e.what());
  }
}

}  // namespace siegel
