#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "cpt/cp.hpp"
#include "cpt/experiment.hpp"
#include "cpt/spectral.hpp"
#include "cpt/tensor.hpp"

using namespace cpt;

namespace {

SymmetricTensor random_nonneg_tensor(std::mt19937_64& rng, int m, int n,
                                     double zero_fraction = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SymmetricTensor a(m, n);
  for (const MultiIndex& k : canonical_indices(m, n)) {
    if (u(rng) < zero_fraction) continue;
    a.set(k.indices(), u(rng));
  }
  return a;
}

std::vector<std::vector<double>> random_permutation_matrix(std::mt19937_64& rng,
                                                           int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) p[i][perm[i]] = 1.0;
  return p;
}

}  // namespace

TEST_CASE("property: lookup is permutation invariant (200 cases)") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    SymmetricTensor a(3, 4);
    std::vector<int> idx = {1 + static_cast<int>(rng() % 4),
                            1 + static_cast<int>(rng() % 4),
                            1 + static_cast<int>(rng() % 4)};
    const double val = u(rng);
    a.set(idx, val);
    std::vector<int> shuffled = idx;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(a.at(shuffled) == val);
  }
}

TEST_CASE("property: classify_dnn is permutation-verdict invariant (200)") {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 200; ++t) {
    const SymmetricTensor a = random_nonneg_tensor(rng, 3, 3, 0.3);
    const SymmetricTensor b =
        matrix_transform(a, random_permutation_matrix(rng, 3));
    ClassifyOptions opts;
    opts.restarts = 40;
    opts.seed = 7;
    CHECK(classify_dnn(a, opts).status == classify_dnn(b, opts).status);
  }
}

TEST_CASE("property: classify_cp is permutation-verdict invariant (200)") {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 200; ++t) {
    const SymmetricTensor a = random_nonneg_tensor(rng, 3, 3, 0.4);
    const SymmetricTensor b =
        matrix_transform(a, random_permutation_matrix(rng, 3));
    CHECK(classify_cp(a).verdict.status == classify_cp(b).verdict.status);
  }
}

TEST_CASE("property: zero_entry_closure is idempotent (200)") {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 200; ++t) {
    const SymmetricTensor a = random_nonneg_tensor(rng, 3, 3, 0.5);
    const ClosureResult once = zero_entry_closure(a);
    const ClosureResult twice = zero_entry_closure(once.tensor);
    CHECK_FALSE(twice.changed);
    CHECK(frobenius_distance(once.tensor, twice.tensor) == 0.0);
  }
}

TEST_CASE("property: one_duplicated family cardinality is m(m-1) (200)") {
  std::mt19937_64 rng(505);
  for (int t = 0; t < 200; ++t) {
    const int m = 2 + static_cast<int>(rng() % 4);  // orders 2..5
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<int> idx(m);
    for (int& v : idx) v = 1 + static_cast<int>(rng() % n);
    const auto fam = one_duplicated_family(MultiIndex(idx));
    CHECK(static_cast<int>(fam.size()) == m * (m - 1));
    for (const MultiIndex& l : fam)
      CHECK(MultiIndex(idx).support_contains(l));
  }
}

TEST_CASE("property: decomposition round-trip within 1e-12 relative (200)") {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.05, 1.5);
  for (int t = 0; t < 200; ++t) {
    const int m = 3 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 2);
    std::vector<RankOneTerm> terms;
    const int r = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < r; ++k) {
      std::vector<double> v(n);
      for (double& x : v) x = u(rng);
      terms.push_back({u(rng), std::move(v)});
    }
    const SymmetricTensor a = make_from_rank_one(terms, m);
    const RankOneDecomposition d(terms);
    CHECK(frobenius_distance(a, d.reconstruct(m)) <=
          1e-12 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST_CASE("property: experiment CSV deterministic across 1 vs 4 workers (200)") {
  std::mt19937_64 rng(707);
  for (int t = 0; t < 200; ++t) {
    ExperimentConfig cfg;
    cfg.kind = (t % 2 == 0) ? ExperimentKind::Hankel : ExperimentKind::Symmetric;
    cfg.m = 3;
    cfg.n = 2 + static_cast<int>(rng() % 2);
    cfg.r = 2 + static_cast<int>(rng() % 3);
    cfg.t = 0.4;
    cfg.samples = 1 + static_cast<int>(rng() % 6);
    cfg.seed = rng();
    std::ostringstream one, four;
    cfg.workers = 1;
    run_experiment(cfg, one);
    cfg.workers = 4;
    run_experiment(cfg, four);
    CHECK(one.str() == four.str());
  }
}
