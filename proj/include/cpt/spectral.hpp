#pragma once

#include <cstdint>
#include <optional>

#include "cpt/structured.hpp"
#include "cpt/tensor.hpp"
#include "cpt/verdict.hpp"

namespace cpt {

enum class EigenKind { H, HPlus, HPlusPlus, Z };

/// (lambda, x) with x normalized to unit max-norm and the residual of the
/// defining equation A x^{m-1} = lambda x^{[m-1]} (or the Z form).
struct EigenPair {
  double lambda = 0.0;
  std::vector<double> x;
  EigenKind kind = EigenKind::H;
  double residual = 0.0;
};

/// Recompute the defining residual of a pair, independent of how it was found.
double h_eigen_residual(const SymmetricTensor& a, double lambda,
                        const std::vector<double>& x);
double z_eigen_residual(const SymmetricTensor& a, double lambda,
                        const std::vector<double>& x);

/// Classify the sign pattern of an H-eigenvector (after sign normalization).
EigenKind classify_eigenvector(const std::vector<double>& x, double tol = kZeroTol);

struct SpectralRadiusResult {
  double rho = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool converged = false;
  int iterations = 0;
  double perturbation = 0.0;  // delta added to every entry when stalled
};

/// Power iteration with Collatz-Wielandt bounds for a nonnegative tensor.
SpectralRadiusResult nqz_spectral_radius(const SymmetricTensor& b,
                                         double tol = 1e-10, int max_iter = 2000);

enum class MClass { StrongM, M, NotZ, NotM };
enum class HClass { StrongH, H, NotH };

MClass m_tensor_class(const SymmetricTensor& a, double tol = 1e-10);

SymmetricTensor comparison_tensor(const SymmetricTensor& a);
HClass h_tensor_class(const SymmetricTensor& a, double tol = 1e-10);

/// Exact enumeration of all real H-eigenpairs at n = 2 via root isolation
/// of the resultant-style polynomial in the (1, t) parametrization.
std::vector<EigenPair> h_spectrum_dim2(const SymmetricTensor& a);

struct SearchOptions {
  int restarts = 200;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  int max_newton_steps = 80;
};

/// Newton iterations on the eigen residual from random sign-orthant starts.
/// Found pairs re-verify to the tolerance; the list is not exhaustive.
std::vector<EigenPair> h_eigen_search(const SymmetricTensor& a,
                                      const SearchOptions& opts = {});

struct CopositivityOptions {
  int grid_depth = 12;
  double tol = 1e-10;
  int max_dim = 6;
};

/// Simplex-lattice sampling of A x^m plus the sufficient-condition shortcuts.
Verdict copositivity_probe(const SymmetricTensor& a,
                           const CopositivityOptions& opts = {});

struct ClassifyOptions {
  bool strong = false;  // SDNN variant: strict conditions, eigenvalues > 0
  std::optional<RankOneDecomposition> decomposition;
  std::optional<std::vector<double>> scaling;  // for generalized dominance
  int restarts = 200;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

/// Doubly-nonnegative classifier: entry nonnegativity, the sufficient-
/// condition battery, the exact n=2 spectrum, then eigen search for a
/// negative-eigenvalue witness.
Verdict classify_dnn(const SymmetricTensor& a, const ClassifyOptions& opts = {});

/// Row-balance fixed-point heuristic for a generalized-dominance scaling
/// vector; nullopt when none is found within the step budget.
std::optional<std::vector<double>> find_dominance_scaling(const SymmetricTensor& a,
                                                          int steps = 100);

}  // namespace cpt
