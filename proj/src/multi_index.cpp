#include "cpt/multi_index.hpp"

namespace cpt {

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t MultiIndex::multiplicity() const {
  std::uint64_t denom = 1;
  int run = 1;
  for (std::size_t i = 1; i < idx_.size(); ++i) {
    if (idx_[i] == idx_[i - 1]) {
      ++run;
    } else {
      denom *= factorial(run);
      run = 1;
    }
  }
  denom *= factorial(run);
  return factorial(order()) / denom;
}

std::vector<int> MultiIndex::support() const {
  std::vector<int> s(idx_);
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool MultiIndex::support_contains(const MultiIndex& other) const {
  const std::vector<int> mine = support();
  for (int v : other.support()) {
    if (!std::binary_search(mine.begin(), mine.end(), v)) return false;
  }
  return true;
}

std::vector<MultiIndex> canonical_indices(int order, int dim) {
  std::vector<MultiIndex> out;
  out.reserve(canonical_count(order, dim));
  std::vector<int> cur(order, 1);
  while (true) {
    out.emplace_back(cur);
    int p = order - 1;
    while (p >= 0 && cur[p] == dim) --p;
    if (p < 0) break;
    ++cur[p];
    for (int q = p + 1; q < order; ++q) cur[q] = cur[p];
  }
  return out;
}

std::uint64_t canonical_count(int order, int dim) {
  // C(dim + order - 1, order)
  std::uint64_t num = 1, den = 1;
  for (int i = 1; i <= order; ++i) {
    num *= static_cast<std::uint64_t>(dim - 1 + i);
    den *= static_cast<std::uint64_t>(i);
  }
  return num / den;
}

}  // namespace cpt
