#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "cpt/tensor.hpp"
#include "cpt/verdict.hpp"

namespace cpt {

/// m-uniform hypergraph on vertices [1..n].
struct Hypergraph {
  int n = 0;
  int m = 0;
  std::set<std::vector<int>> edges;  // each edge sorted, m distinct vertices

  void add_edge(std::vector<int> edge);
  std::vector<int> degrees() const;

  std::string to_text() const;
  static Hypergraph from_text(const std::string& text);
};

// ---- Hankel family -------------------------------------------------------

/// a_{i_1..i_m} = v[i_1+...+i_m - m], v is 0-based of length (n-1)m+1.
SymmetricTensor hankel_from_vector(const std::vector<double>& v, int order, int dim);

/// Recover the generating vector when every entry depends on the index sum
/// only; nullopt otherwise.
std::optional<std::vector<double>> hankel_generating_vector(const SymmetricTensor& a);

/// PSD test of the associated Hankel moment matrix. When (n-1)m is odd the
/// bottom-right corner is free; certification then uses the exact one-entry
/// completion criterion (leading block PSD and border column in its range).
Verdict strong_hankel_test(const std::vector<double>& v, int order, int dim);

struct VandermondeSum {
  SymmetricTensor tensor;
  RankOneDecomposition decomposition;
};

/// sum_k alpha_k (1, xi_k, ..., xi_k^{n-1})^m.
VandermondeSum vandermonde_sum(const std::vector<double>& xi,
                               const std::vector<double>& weights, int order, int dim);

// ---- Cauchy family -------------------------------------------------------

/// c_{i_1..i_m} = 1 / (c_{i_1} + ... + c_{i_m}).
SymmetricTensor cauchy_from_vector(const std::vector<double>& c, int order);

/// Entries match 1/(c_{i_1}+...+c_{i_m}) for c recovered from the diagonal
/// (c_i = 1/(m a_{i..i})); nullopt when the pattern does not hold.
std::optional<std::vector<double>> cauchy_generating_vector(const SymmetricTensor& a,
                                                            double rel_tol = 1e-9);

/// a_{i_1..i_m} = 1/(i_1+...+i_m-m+1); a Cauchy and a Hankel tensor at once.
SymmetricTensor hilbert_tensor(int order, int dim);

// ---- Circulant / Toeplitz ------------------------------------------------

struct CirculantResult {
  bool symmetric = false;
  std::optional<SymmetricTensor> tensor;  // set when symmetric
  double diagonal_entry = 0.0;            // c_0 = a_{1..1}
  bool doubly_circulant = false;          // all row tensors equal the root
};

/// Fill an order-m candidate from its root tensor (the order-(m-1) row
/// tensor at row 1) by cyclic index shifts.
CirculantResult circulant_from_root(const SymmetricTensor& root, int dim);

struct ToeplitzResult {
  bool symmetric = false;
  std::optional<SymmetricTensor> tensor;
  double diagonal_entry = 0.0;
};

/// Band keyed by the sorted offset tuple (i_2-i_1, ..., i_m-i_1) relative to
/// the smallest index; absent offsets are zero.
ToeplitzResult toeplitz_from_band(const std::map<std::vector<int>, double>& band,
                                  int order, int dim);

// ---- Hypergraph tensors --------------------------------------------------

struct HypergraphTensors {
  SymmetricTensor adjacency;
  SymmetricTensor signless_laplacian;
};

HypergraphTensors hypergraph_tensors(const Hypergraph& g);

/// Structural match against degree-diagonal plus (1/(m-1)!)-adjacency;
/// returns the hypergraph when the tensor is a signless Laplacian.
std::optional<Hypergraph> recognize_signless_laplacian(const SymmetricTensor& a,
                                                       double tol = kZeroTol);

// ---- Structural predicates -----------------------------------------------

enum class DominanceClass { Strict, Weak, None };

DominanceClass diagonal_dominance_class(const SymmetricTensor& a);
DominanceClass diagonal_dominance_class(const ScaledTensorView& a);

enum class B0Class { B0, NotB0 };

B0Class b0_class(const SymmetricTensor& a);

}  // namespace cpt
