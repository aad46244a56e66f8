#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace cpt {

/// Canonical (nondecreasing) index tuple of length m with entries in [1..n].
/// Two tuples that are permutations of each other canonicalize to the same
/// MultiIndex. The multiplicity is the number of distinct permutations of
/// the tuple, i.e. the multinomial coefficient m! / prod(rep_i!).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> indices) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
  }

  const std::vector<int>& indices() const { return idx_; }
  int order() const { return static_cast<int>(idx_.size()); }
  int operator[](int pos) const { return idx_[pos]; }

  std::uint64_t multiplicity() const;

  /// Set of distinct values (the support), sorted ascending.
  std::vector<int> support() const;

  /// True if every value appearing in other's support also appears here.
  bool support_contains(const MultiIndex& other) const;

  bool is_diagonal() const {
    return std::all_of(idx_.begin(), idx_.end(),
                       [&](int v) { return v == idx_.front(); });
  }

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> idx_;
};

std::uint64_t factorial(int k);

/// All canonical multi-indices of length m over [1..n], lexicographic order.
std::vector<MultiIndex> canonical_indices(int order, int dim);

/// Number of canonical multi-indices: C(n+m-1, m).
std::uint64_t canonical_count(int order, int dim);

}  // namespace cpt
