#include "siegel/enumeration.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace siegel {

namespace {

using Key = std::vector<long long>;

Key key_of(const IMatrix& g) { return Key(g.data(), g.data() + g.size()); }

IMatrix integer_J(int n) {
  IMatrix j = IMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -IMatrix::Identity(n, n);
  return j;
}

IMatrix checked_product(const IMatrix& a, const IMatrix& b, long long max_entry) {
  IMatrix c = a * b;
  if (c.cwiseAbs().maxCoeff() > max_entry) {
    std::ostringstream os;
    os << "enumeration: entry size exceeds cap " << max_entry;
    throw ResourceError(os.str());
  }
  return c;
}

bool is_plus_minus_identity(const IMatrix& g) {
  const auto id = IMatrix::Identity(g.rows(), g.cols());
  return g == id || g == IMatrix(-id);
}

class KeyIndex {
 public:
  bool insert(const IMatrix& g) { return index_.emplace(key_of(g), index_.size()).second; }
  bool contains(const IMatrix& g) const { return index_.count(key_of(g)) > 0; }

 private:
  std::map<Key, std::size_t> index_;
};

}  // namespace

bool is_integer_symplectic(const IMatrix& g) {
  if (g.rows() != g.cols() || g.rows() % 2 != 0) return false;
  const IMatrix j = integer_J(static_cast<int>(g.rows() / 2));
  return g.transpose() * j * g == j;
}

bool congruent_identity(const IMatrix& g, long long level) {
  if (level == 1) return true;
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
      const long long target = r == c ? 1 : 0;
      if ((g(r, c) - target) % level != 0) return false;
    }
  return true;
}

SymplecticMatrix to_real(const IMatrix& g) { return SymplecticMatrix(g.cast<double>(), 1e-12); }

bool GroupElementSet::contains(const IMatrix& g) const {
  for (const auto& e : elements)
    if (e == g) return true;
  return false;
}

bool GroupElementSet::right_invariant(const IMatrix& gamma) const {
  KeyIndex idx;
  for (const auto& e : elements) idx.insert(e);
  for (const auto& e : elements)
    if (!idx.contains(e * gamma)) return false;
  return true;
}

std::vector<IMatrix> generators(int n) {
  if (n < 1) throw ConfigError("generators: n must be positive");
  std::vector<IMatrix> gens;
  const IMatrix j = integer_J(n);
  gens.push_back(j);
  gens.push_back(-j);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) {
      IMatrix sym = IMatrix::Zero(n, n);
      sym(r, s) = 1;
      sym(s, r) = 1;
      for (int sign : {1, -1}) {
        IMatrix g = IMatrix::Identity(2 * n, 2 * n);
        g.topRightCorner(n, n) = sign * sym;
        gens.push_back(g);
      }
    }
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      for (int sign : {1, -1}) {
        IMatrix u = IMatrix::Identity(n, n);
        u(r, s) = sign;
        IMatrix uinvt = IMatrix::Identity(n, n);
        uinvt(s, r) = -sign;
        IMatrix g = IMatrix::Zero(2 * n, 2 * n);
        g.topLeftCorner(n, n) = u;
        g.bottomRightCorner(n, n) = uinvt;
        gens.push_back(g);
      }
    }
  return gens;
}

GroupElementSet enumerate_ball(int n, const std::vector<IMatrix>& gens, int word_bound, long long level,
                               const EnumerationLimits& limits) {
  if (word_bound < 0) throw ConfigError("enumerate_ball: word bound must be nonnegative");
  if (level < 1) throw ConfigError("enumerate_ball: level must be positive");
  for (const auto& g : gens)
    if (g.rows() != 2 * n || !is_integer_symplectic(g))
      throw PreconditionError("enumerate_ball: generator is not an integer symplectic matrix");

  std::vector<IMatrix> all{IMatrix::Identity(2 * n, 2 * n)};
  std::vector<int> length{0};
  KeyIndex seen;
  seen.insert(all.front());
  std::size_t frontier_begin = 0;
  for (int l = 1; l <= word_bound; ++l) {
    const std::size_t frontier_end = all.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i)
      for (const auto& g : gens) {
        IMatrix h = checked_product(all[i], g, limits.max_entry);
        if (!seen.insert(h)) continue;
        all.push_back(std::move(h));
        length.push_back(l);
        if (all.size() > limits.max_elements) {
          std::ostringstream os;
          os << "enumerate_ball: more than " << limits.max_elements << " elements";
          throw ResourceError(os.str());
        }
      }
    frontier_begin = frontier_end;
  }

  GroupElementSet out;
  out.n = n;
  out.level = level;
  out.word_bound = word_bound;
  out.generator_set = gens.size() == generators(n).size() && gens == generators(n) ? "standard" : "custom";
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!congruent_identity(all[i], level)) continue;
    out.elements.push_back(all[i]);
    out.word_length.push_back(length[i]);
  }
  return out;
}

GroupElementSet symmetrize(const GroupElementSet& s, const IMatrix& gamma, int order_bound,
                           const EnumerationLimits& limits) {
  if (gamma.rows() != 2 * s.n || !is_integer_symplectic(gamma))
    throw PreconditionError("symmetrize: gamma is not an integer symplectic matrix of the right size");

  // Order modulo +-I, then the full cyclic group generated by gamma.
  std::vector<IMatrix> powers{IMatrix::Identity(2 * s.n, 2 * s.n)};
  int order = 0;
  IMatrix p = gamma;
  for (int k = 1; k <= order_bound; ++k) {
    if (is_plus_minus_identity(p)) {
      order = k;
      break;
    }
    p = checked_product(p, gamma, limits.max_entry);
  }
  if (order == 0) {
    std::ostringstream os;
    os << "symmetrize: gamma has no finite order modulo +-I up to " << order_bound;
    throw PreconditionError(os.str());
  }
  const bool minus = p != IMatrix::Identity(p.rows(), p.cols());
  const int group_order = minus ? 2 * order : order;
  for (int k = 1; k < group_order; ++k) powers.push_back(powers.back() * gamma);

  GroupElementSet out;
  out.n = s.n;
  out.word_bound = s.word_bound;
  out.generator_set = s.generator_set;
  out.closure = s.closure;
  KeyIndex seen;
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    for (const auto& q : powers) {
      IMatrix h = checked_product(s.elements[i], q, limits.max_entry);
      if (!seen.insert(h)) continue;
      out.elements.push_back(std::move(h));
      out.word_length.push_back(s.word_length.empty() ? 0 : s.word_length[i]);
      if (out.elements.size() > limits.max_elements) throw ResourceError("symmetrize: element cap exceeded");
    }

  long long level = s.level;
  auto all_congruent = [&](long long d) {
    for (const auto& e : out.elements)
      if (!congruent_identity(e, d)) return false;
    return true;
  };
  while (level > 1 && !all_congruent(level)) {
    long long d = level - 1;
    while (s.level % d != 0) --d;
    level = d;
  }
  out.level = level;

  for (auto& flag : out.closure) flag.closed = out.right_invariant(flag.gamma);
  out.closure.push_back({gamma, out.right_invariant(gamma)});
  return out;
}

namespace {

nlohmann::json matrix_json(const IMatrix& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
    rows.push_back(row);
  }
  return rows;
}

IMatrix matrix_from_json(const nlohmann::json& j, int n) {
  const int size = 2 * n;
  if (!j.is_array() || static_cast<int>(j.size()) != size) throw ConfigError("group set: malformed matrix");
  IMatrix g(size, size);
  for (int r = 0; r < size; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != size) throw ConfigError("group set: malformed matrix row");
    for (int c = 0; c < size; ++c) g(r, c) = row[static_cast<std::size_t>(c)].get<long long>();
  }
  return g;
}

}  // namespace

nlohmann::json to_json(const GroupElementSet& s) {
  nlohmann::json j;
  j["format"] = "siegel-group-set";
  j["version"] = 1;
  j["n"] = s.n;
  j["level"] = s.level;
  j["word_bound"] = s.word_bound;
  j["generator_set"] = s.generator_set;
  j["elements"] = nlohmann::json::array();
  for (const auto& e : s.elements) j["elements"].push_back(matrix_json(e));
  j["word_length"] = s.word_length;
  j["closure"] = nlohmann::json::array();
  for (const auto& f : s.closure) j["closure"].push_back({{"gamma", matrix_json(f.gamma)}, {"closed", f.closed}});
  return j;
}

GroupElementSet group_set_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "siegel-group-set" || j.at("version") != 1)
      throw ConfigError("group set: unsupported format or version");
    GroupElementSet s;
    s.n = j.at("n").get<int>();
    if (s.n < 1) throw ConfigError("group set: n must be positive");
    s.level = j.at("level").get<long long>();
    s.word_bound = j.at("word_bound").get<int>();
    s.generator_set = j.at("generator_set").get<std::string>();
    for (const auto& e : j.at("elements")) {
      IMatrix g = matrix_from_json(e, s.n);
      if (!is_integer_symplectic(g) || !congruent_identity(g, s.level))
        throw ConfigError("group set: element is not in the congruence subgroup");
      s.elements.push_back(std::move(g));
    }
    s.word_length = j.at("word_length").get<std::vector<int>>();
    if (s.word_length.size() != s.elements.size()) throw ConfigError("group set: word_length size mismatch");
    for (const auto& f : j.at("closure"))
      s.closure.push_back({matrix_from_json(f.at("gamma"), s.n), f.at("closed").get<bool>()});
    KeyIndex seen;
    for (const auto& e : s.elements)
      if (!seen.insert(e)) throw ConfigError("group set: duplicate element");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("group set: ") + e.what());
  }
}

}  // namespace siegel
