#pragma once

#include <functional>
#include <optional>

#include "cpt/spectral.hpp"
#include "cpt/tensor.hpp"
#include "cpt/verdict.hpp"

namespace cpt {

/// s-duplicate family of a target index: s member tuples whose supports
/// live inside the target's support, with every index of multiplicity t in
/// the target appearing s*t times in total across the members.
struct DuplicateFamily {
  MultiIndex target;
  std::vector<MultiIndex> members;

  int s() const { return static_cast<int>(members.size()); }
};

struct ClosureResult {
  SymmetricTensor tensor;
  bool changed = false;
  /// (zero index, dominated index that had to be zeroed) for the first hit.
  std::optional<std::pair<MultiIndex, MultiIndex>> witness;
};

/// Algorithm step 0: propagate every eps-zero entry to all indices whose
/// support contains its support. changed implies the input is not CP.
ClosureResult zero_entry_closure(const SymmetricTensor& a, double eps = kZeroTol);

/// The m(m-1) tuples obtained by overwriting position p with the value at
/// position q != p. Repetitions are kept (the family is a multiset).
std::vector<MultiIndex> one_duplicated_family(const MultiIndex& target);

/// Algorithm step 1: a_I <= mean over the one-duplicated family, for every
/// canonical index. Necessary for CP, not sufficient.
Verdict one_duplicated_check(const SymmetricTensor& a);

/// Strong-dominance inequality for a caller-supplied family.
Verdict s_duplicate_verify(const SymmetricTensor& a, const DuplicateFamily& family);

struct RankOneCheck {
  Verdict verdict;
  std::optional<RankOneDecomposition> decomposition;  // present on Yes
};

/// Recover (lambda, x) from the entries, verify the rank-one form, then
/// decide CP by entrywise nonnegativity.
RankOneCheck rank_one_cp_check(const SymmetricTensor& a, double tol = 1e-9);

/// Right-endpoint-rule quadrature decomposition of a positive Cauchy tensor:
/// u^j_i = (j/k)^{c_i - 1/m} / k^{1/m}, j = 1..k.
RankOneDecomposition cauchy_cp_decomposition(const std::vector<double>& c, int order,
                                             int quadrature_terms);

struct DecompositionReport {
  bool reconstructs = false;
  bool nonneg = false;
  bool spans = false;
  double frobenius_error = 0.0;
};

DecompositionReport decomposition_verify(const SymmetricTensor& a,
                                         const RankOneDecomposition& d, double tol,
                                         double span_cutoff = 1e-8);

/// Sufficient CP test for nonnegative Hankel tensors: the zero-interleaved
/// generating vector must define a strong Hankel tensor at dimension 2n-1.
Verdict interleaved_hankel_cp_test(const std::vector<double>& v, int order, int dim);

/// alpha (e^(i) - e^(j))^m + alpha e^m; doubly nonnegative but not CP.
struct GapTensor {
  SymmetricTensor tensor;
  RankOneDecomposition decomposition;
};
GapTensor gap_family(int i, int j, double alpha, int order, int dim);

/// External decomposition engine (Algorithm step 2 stand-in): returns a
/// decomposition of the given tensor or nullopt.
using DecomposerHook =
    std::function<std::optional<RankOneDecomposition>(const SymmetricTensor&)>;

struct CpOptions {
  std::optional<RankOneDecomposition> decomposition;
  DecomposerHook decomposer;
  double eps = kZeroTol;       // step-0 zero tolerance
  int quadrature_terms = 64;   // for the Cauchy sufficiency route
  bool greedy_fallback = false;
};

struct CpResult {
  Verdict verdict;
  std::optional<RankOneDecomposition> decomposition;  // attached to a Yes
};

/// CP classifier: nonnegativity, step 0, step 1, structural sufficiency
/// (rank-one, Cauchy recognition, interleaved Hankel, attached
/// decomposition), then the decomposer hook.
CpResult classify_cp(const SymmetricTensor& a, const CpOptions& opts = {});

/// Bundled fallback decomposer: greedy alternating nonnegative rank-one
/// fitting. Heuristic only; never used to certify a No.
std::optional<RankOneDecomposition> greedy_nonneg_fit(const SymmetricTensor& a,
                                                      int max_terms = 64,
                                                      double tol = 1e-8,
                                                      std::uint64_t seed = 1);

}  // namespace cpt
