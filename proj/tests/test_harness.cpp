#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cpt/experiment.hpp"
#include "cpt/structured.hpp"

using namespace cpt;

namespace {

const std::vector<std::vector<double>> kPinnedNodes = {
    {1.3769, -1.4082, 0.1412, 1.2897, -0.4949, -0.6248, -0.9336, -0.2787,
     -0.2005, 0.1367, -0.8833, 0.0825, -0.6039, -0.3687, -0.8382, -0.2825},
    {-0.7841, -1.8054, 1.8586, -0.6045, 0.1034, 0.5632, 0.1136, -0.9047,
     -0.4677, -0.1249, 1.4790, -0.8608, 0.7847, 0.3086, -0.2339, -1.0570},
    {2.5610, 0.1966, 0.7577, 2.0048, 0.9201, 1.6254, 1.7530, 1.2135, 0.2298,
     0.9929, 1.0932, 1.9353, 1.6635, 0.6498, 2.6199, 0.9492}};

}  // namespace

TEST_CASE("pinned-node samples reproduce the recorded shifts") {
  const HankelSample s0 = hankel_from_nodes(kPinnedNodes[0], 3, 11);
  CHECK(std::abs(s0.alpha - (-8.2003e+03)) <= 1e-3 * 8.2003e3);
  const HankelSample s1 = hankel_from_nodes(kPinnedNodes[1], 3, 11);
  CHECK(std::abs(s1.alpha - (-1.6321)) <= 1e-3 * 1.6321);
  const HankelSample s2 = hankel_from_nodes(kPinnedNodes[2], 3, 11);
  CHECK(s2.alpha == 0.0);
  // the shifted decomposition reconstructs the sample
  CHECK(frobenius_distance(s2.tensor,
                           s2.shifted_decomposition.reconstruct(3)) <=
        1e-9 * s2.tensor.frobenius_norm());
}

TEST_CASE("pinned-node preprocessing labels") {
  // all-positive nodes: positive entries, both steps pass
  const HankelSample s2 = hankel_from_nodes(kPinnedNodes[2], 3, 11);
  const PreprocessReport fwd = preprocess_pipeline(s2.tensor);
  CHECK(fwd.step0_pass);
  CHECK(fwd.step1_pass);
  CHECK(fwd.forwarded);
  // negative shift introduces an exact zero whose support dominates
  // nonzero entries: excluded at step 0
  const HankelSample s0 = hankel_from_nodes(kPinnedNodes[0], 3, 11);
  const PreprocessReport ex = preprocess_pipeline(s0.tensor);
  CHECK_FALSE(ex.step0_pass);
  CHECK(ex.step0_witness.has_value());
  CHECK_FALSE(ex.forwarded);
}

TEST_CASE("per-sample rng is deterministic and decorrelated") {
  SampleRng a(7, 3);
  SampleRng b(7, 3);
  SampleRng c(7, 4);
  bool all_equal = true;
  for (int i = 0; i < 32; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    if (x != c.normal()) all_equal = false;
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("sample_hankel is nonnegative with a hankel structure") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Hankel;
  cfg.m = 3;
  cfg.n = 3;
  cfg.r = 3;
  cfg.seed = 11;
  for (int id = 0; id < 20; ++id) {
    const HankelSample s = sample_hankel(cfg, id);
    CHECK(s.tensor.is_nonnegative());
    CHECK(hankel_generating_vector(s.tensor).has_value());
    CHECK(s.alpha <= 0.0);
  }
}

TEST_CASE("sample_symmetric is nonnegative and symmetric by construction") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Symmetric;
  cfg.m = 5;
  cfg.n = 3;
  cfg.t = 0.4;
  cfg.seed = 3;
  for (int id = 0; id < 5; ++id) {
    const SymmetricSample s = sample_symmetric(cfg, id);
    CHECK(s.tensor.is_nonnegative());
    CHECK(s.tensor.order() == 5);
    CHECK(s.tensor.dim() == 3);
  }
}

TEST_CASE("run_experiment emits the CSV contract in sample order") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Hankel;
  cfg.m = 3;
  cfg.n = 3;
  cfg.r = 3;
  cfg.samples = 25;
  cfg.seed = 99;
  std::ostringstream csv;
  const ExperimentSummary s = run_experiment(cfg, csv);
  std::istringstream in(csv.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "sample_id,alpha,excluded_by,elapsed_ms");
  int expected_id = 0;
  int excluded = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string id, alpha, by, ms;
    REQUIRE(std::getline(fields, id, ','));
    REQUIRE(std::getline(fields, alpha, ','));
    REQUIRE(std::getline(fields, by, ','));
    REQUIRE(std::getline(fields, ms, ','));
    CHECK(std::stoi(id) == expected_id++);
    CHECK((by == "step0" || by == "step1" || by == "none"));
    if (by != "none") ++excluded;
  }
  CHECK(expected_id == 25);
  CHECK(s.excluded_step0 + s.excluded_step1 == excluded);
  CHECK(s.excluded_fraction ==
        doctest::Approx(static_cast<double>(excluded) / 25.0));
}

TEST_CASE("run_experiment output is byte-identical across worker counts") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Symmetric;
  cfg.m = 3;
  cfg.n = 3;
  cfg.t = 0.4;
  cfg.samples = 40;
  cfg.seed = 1234;
  std::ostringstream one, four;
  cfg.workers = 1;
  run_experiment(cfg, one);
  cfg.workers = 4;
  run_experiment(cfg, four);
  CHECK(one.str() == four.str());
}

TEST_CASE("tcp residual verifies the identity-tensor solution") {
  // A = I (m=3, n=2), q = (-1,-1), x = (1,1): q + A x^2 = 0
  const SymmetricTensor ident = SymmetricTensor::identity(3, 2);
  const TcpReport sol = tcp_residual(ident, {-1.0, -1.0}, {1.0, 1.0});
  CHECK(sol.feasible);
  CHECK(sol.complementarity_gap == doctest::Approx(0.0));
  CHECK(sol.solution);
  // q >= 0, x = 0 is always a solution
  const TcpReport zero = tcp_residual(ident, {0.5, 2.0}, {0.0, 0.0});
  CHECK(zero.solution);
  // infeasible x
  const TcpReport bad = tcp_residual(ident, {-1.0, -1.0}, {-1.0, 1.0});
  CHECK_FALSE(bad.feasible);
  CHECK_FALSE(bad.solution);
  // complementarity violated: feasible but positive gap
  const TcpReport gap = tcp_residual(ident, {1.0, 1.0}, {1.0, 1.0});
  CHECK(gap.feasible);
  CHECK(gap.complementarity_gap > 1.0);
  CHECK_FALSE(gap.solution);
  CHECK_THROWS_AS(tcp_residual(ident, {1.0}, {1.0, 1.0}), TensorError);
}
