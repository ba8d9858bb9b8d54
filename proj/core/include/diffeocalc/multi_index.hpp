#ifndef DIFFEOCALC_MULTI_INDEX_HPP
#define DIFFEOCALC_MULTI_INDEX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "diffeocalc/rational.hpp"

namespace diffeocalc {

/// Strictly increasing tuple of basis-covector indices; names one basis
/// element of grade |I| in an exterior (or Clifford) algebra.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> indices);

  std::size_t grade() const { return indices_.size(); }
  const std::vector<int>& indices() const { return indices_; }
  int max_index() const { return indices_.empty() ? -1 : indices_.back(); }
  bool contains(int i) const;

  /// Merges two disjoint index sets into ascending order; returns the
  /// sign of the shuffle, or nullopt when an index repeats.
  static std::optional<std::pair<int, MultiIndex>> merge(const MultiIndex& a,
                                                         const MultiIndex& b);

  /// Removes the index at position `pos`; pairs with the sign (-1)^pos.
  MultiIndex erased_at(std::size_t pos) const;

  /// Ascending complement within {0, ..., n-1} together with the sign of
  /// the permutation (I, I^c) of (0, ..., n-1).
  std::pair<int, MultiIndex> complement(int n) const;

  /// All strictly increasing k-tuples in {0, ..., n-1}, lexicographic.
  static std::vector<MultiIndex> all(int n, std::size_t k);

  bool operator==(const MultiIndex& other) const { return indices_ == other.indices_; }
  bool operator<(const MultiIndex& other) const;

  std::string str(const std::vector<std::string>& basis_names) const;

 private:
  std::vector<int> indices_;
};

}  // namespace diffeocalc

#endif
