#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "cpt/multi_index.hpp"

namespace cpt {

/// Global zero tolerance for entry comparisons.
inline constexpr double kZeroTol = 1e-12;

class TensorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetric tensor of order m and dimension n, stored sparsely by
/// canonical multi-index. Absent keys are zero. Immutable once built up;
/// all operations return new values.
class SymmetricTensor {
 public:
  SymmetricTensor(int order, int dim) : order_(order), dim_(dim) {
    if (order < 1 || dim < 1) throw TensorError("order and dim must be >= 1");
  }

  int order() const { return order_; }
  int dim() const { return dim_; }

  /// Lookup by any permutation of an index tuple.
  double at(const std::vector<int>& indices) const;
  double at(const MultiIndex& key) const;

  void set(const std::vector<int>& indices, double value);
  void add(const std::vector<int>& indices, double value);

  const std::map<MultiIndex, double>& entries() const { return entries_; }

  bool is_nonnegative(double tol = kZeroTol) const;
  double min_entry() const;
  double max_abs_entry() const;
  double frobenius_norm() const;

  SymmetricTensor operator+(const SymmetricTensor& other) const;
  SymmetricTensor operator-(const SymmetricTensor& other) const;
  SymmetricTensor operator*(double scale) const;

  static SymmetricTensor identity(int order, int dim);   // diagonal of ones
  static SymmetricTensor all_ones(int order, int dim);   // e^m
  static SymmetricTensor diagonal(int order, const std::vector<double>& d);

 private:
  void check_bounds(const MultiIndex& key) const;

  int order_;
  int dim_;
  std::map<MultiIndex, double> entries_;
};

double frobenius_distance(const SymmetricTensor& a, const SymmetricTensor& b);

/// Weighted sum of m-th outer powers: sum_k alpha_k (u^(k))^m.
struct RankOneTerm {
  double weight;
  std::vector<double> vector;
};

class RankOneDecomposition {
 public:
  RankOneDecomposition() = default;
  explicit RankOneDecomposition(std::vector<RankOneTerm> terms)
      : terms_(std::move(terms)) {}

  const std::vector<RankOneTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int dim() const { return terms_.empty() ? 0 : static_cast<int>(terms_[0].vector.size()); }

  SymmetricTensor reconstruct(int order) const;

  /// All weights >= 0 (after odd-order absorption) and vectors >= -tol.
  bool is_nonnegative(int order, double tol = kZeroTol) const;

  /// Numerical rank of the vector family equals the ambient dimension.
  /// Cutoff: singular values below tol * sigma_max do not count.
  bool spans_full_space(double tol = 1e-8) const;

  /// Fold weights into the vectors where the order allows it; terms with
  /// weights that cannot be absorbed keep their sign.
  RankOneDecomposition normalized(int order) const;

 private:
  std::vector<RankOneTerm> terms_;
};

SymmetricTensor make_from_rank_one(const std::vector<RankOneTerm>& terms, int order);

/// Evaluate A x^m.
double evaluate_form(const SymmetricTensor& a, const std::vector<double>& x);

/// Contract the last l slots with x; scalar results come back as order-0
/// tensors are not representable, so l == m is exposed via evaluate_form and
/// contract requires l < m. l = m-1 yields the vector A x^{m-1}.
SymmetricTensor contract(const SymmetricTensor& a, const std::vector<double>& x, int l);

/// A x^{m-1} as a plain vector.
std::vector<double> apply(const SymmetricTensor& a, const std::vector<double>& x);

/// (P^m A)_{i_1..i_m} = sum p_{i_1 j_1} ... p_{i_m j_m} a_{j_1..j_m}.
/// P is rows x dim(A); the result has dimension rows.
SymmetricTensor matrix_transform(const SymmetricTensor& a,
                                 const std::vector<std::vector<double>>& p);

/// Non-symmetric carrier for the diagonal similarity scaling: entries keyed
/// by (row, canonical rest). Consumed only by the dominance checker.
class ScaledTensorView {
 public:
  ScaledTensorView(const SymmetricTensor& a, std::vector<double> d);

  int order() const { return a_.order(); }
  int dim() const { return a_.dim(); }
  /// Entry a_{i i2..im} d_i^{1-m} d_{i2} ... d_{im}.
  double at(int row, const MultiIndex& rest) const;
  const SymmetricTensor& base() const { return a_; }
  const std::vector<double>& scaling() const { return d_; }

 private:
  SymmetricTensor a_;
  std::vector<double> d_;
};

ScaledTensorView diag_scale(const SymmetricTensor& a, const std::vector<double>& d);

SymmetricTensor hadamard(const SymmetricTensor& a, const SymmetricTensor& b);

/// Restrict to indices in gamma (1-based, strictly increasing after sort),
/// reindexed 1..|gamma|.
SymmetricTensor principal_subtensor(const SymmetricTensor& a, std::vector<int> gamma);

}  // namespace cpt
