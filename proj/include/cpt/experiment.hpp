#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cpt/cp.hpp"
#include "cpt/tensor.hpp"

namespace cpt {

enum class ExperimentKind { Hankel, Symmetric };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Hankel;
  int m = 3;
  int n = 3;
  int r = 3;        // hankel: number of Vandermonde nodes
  double t = 0.4;   // symmetric: coefficient shift
  int samples = 1;
  std::uint64_t seed = 0;
  double eps = 1e-12;
  int workers = 1;
};

enum class ExcludedBy { Step0, Step1, None };

inline const char* to_string(ExcludedBy e) {
  switch (e) {
    case ExcludedBy::Step0: return "step0";
    case ExcludedBy::Step1: return "step1";
    default: return "none";
  }
}

struct ExperimentRecord {
  int sample_id = 0;
  double alpha = 0.0;  // the nonnegativization shift
  ExcludedBy excluded_by = ExcludedBy::None;
  std::int64_t elapsed_ms = 0;
};

struct PreprocessReport {
  bool step0_pass = false;
  bool step1_pass = false;
  bool forwarded = false;
  std::optional<MultiIndex> step0_witness;
  std::optional<MultiIndex> step1_witness;
};

/// Step 0 then step 1, exactly in pipeline order; forwarded means both pass.
PreprocessReport preprocess_pipeline(const SymmetricTensor& a, double eps = 1e-12);

/// Deterministic per-sample generator stream: counter-mode mixing of
/// (master seed, sample id), with an explicit Box-Muller normal so the draw
/// sequence is platform-independent.
class SampleRng {
 public:
  SampleRng(std::uint64_t master_seed, std::uint64_t sample_id);
  double uniform();  // in (0, 1)
  double normal();

 private:
  std::uint64_t next_bits();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct HankelSample {
  SymmetricTensor tensor{1, 1};
  double alpha = 0.0;
  std::vector<double> xi;
  RankOneDecomposition shifted_decomposition;  // B terms plus the e^m shift
};

/// Example-7.1 style draw: xi ~ N(0,1)^r, B = sum (1,xi,..,xi^{n-1})^m,
/// alpha = min(min-entry, 0), A = B - alpha e^m.
HankelSample sample_hankel(const ExperimentConfig& cfg, int sample_id);

/// Same construction with a pinned xi vector instead of a random draw.
HankelSample hankel_from_nodes(const std::vector<double>& xi, int m, int n);

struct SymmetricSample {
  SymmetricTensor tensor{1, 1};
  double rho = 0.0;
};

/// Example-7.2 style draw: one randn+t coefficient per canonical index on
/// the (sum of basis vectors)^m frame, then the same nonnegativization.
SymmetricSample sample_symmetric(const ExperimentConfig& cfg, int sample_id);

struct ExperimentSummary {
  int samples = 0;
  int excluded_step0 = 0;
  int excluded_step1 = 0;
  double excluded_fraction = 0.0;
};

/// Runs the cohort, streams CSV records (header:
/// sample_id,alpha,excluded_by,elapsed_ms) in sample order, and returns the
/// integer-counted summary. Deterministic for a given seed regardless of
/// the worker count.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, std::ostream& csv);

struct TcpReport {
  bool feasible = false;
  double complementarity_gap = 0.0;
  bool solution = false;
};

/// Residual check for the complementarity problem:
/// x >= 0, q + A x^{m-1} >= 0, x^T (q + A x^{m-1}) = 0.
TcpReport tcp_residual(const SymmetricTensor& a, const std::vector<double>& q,
                       const std::vector<double>& x, double tol = 1e-8);

}  // namespace cpt
