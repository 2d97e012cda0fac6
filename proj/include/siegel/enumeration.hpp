#pragma once

#include "siegel/symplectic.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace siegel {

using IMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact test g^T J g = J over the integers.
bool is_integer_symplectic(const IMatrix& g);
bool congruent_identity(const IMatrix& g, long long level);
SymplecticMatrix to_real(const IMatrix& g);

struct EnumerationLimits {
  std::size_t max_elements = 1000000;
  long long max_entry = 1000000;
};

struct ClosureFlag {
  IMatrix gamma;
  bool closed = false;
};

/// Finite subset of Sp_{2n}(Z) made of elements congruent to I mod `level`.
/// +g and -g are distinct elements.
struct GroupElementSet {
  int n = 1;
  long long level = 1;
  int word_bound = 0;
  std::string generator_set;
  std::vector<IMatrix> elements;
  /// BFS word length of each element (for symmetrized elements, that of
  /// the source element).
  std::vector<int> word_length;
  std::vector<ClosureFlag> closure;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(const IMatrix& g) const;
  /// S gamma == S as sets.
  bool right_invariant(const IMatrix& gamma) const;
};

/// J, J^{-1}, n_{+-S} for the standard basis of symmetric integer matrices and,
/// for n >= 2, block embeddings diag(U, U^{-T}) of elementary transvections
/// and their inverses.
std::vector<IMatrix> generators(int n);

GroupElementSet enumerate_ball(int n, const std::vector<IMatrix>& gens, int word_bound, long long level,
                               const EnumerationLimits& limits = {});

/// S' = S <gamma>, the closure under right multiplication by gamma. gamma must
/// have finite order modulo +-I (checked up to `order_bound`). If gamma is not
/// congruent to I mod the level, the level of the result is lowered to the
/// largest divisor for which every element still satisfies the congruence.
GroupElementSet symmetrize(const GroupElementSet& s, const IMatrix& gamma, int order_bound = 64,
                           const EnumerationLimits& limits = {});

nlohmann::json to_json(const GroupElementSet& s);
GroupElementSet group_set_from_json(const nlohmann::json& j);

}  // namespace siegel
