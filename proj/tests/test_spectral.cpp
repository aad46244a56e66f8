#include <doctest.h>

#include <cmath>
#include <random>

#include "cpt/spectral.hpp"
#include "cpt/structured.hpp"

using namespace cpt;

TEST_CASE("eigenvector kind classification") {
  CHECK(classify_eigenvector({1.0, 2.0}) == EigenKind::HPlusPlus);
  CHECK(classify_eigenvector({1.0, 0.0}) == EigenKind::HPlus);
  CHECK(classify_eigenvector({1.0, -1.0}) == EigenKind::H);
}

TEST_CASE("nqz spectral radius of the all-ones tensor is n^{m-1}") {
  // e^m x^{m-1}, x = e: each row sums to n^{m-1}
  const auto res = nqz_spectral_radius(SymmetricTensor::all_ones(3, 3));
  CHECK(res.converged);
  CHECK(res.rho == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(res.lo <= res.rho + 1e-9);
  CHECK(res.hi >= res.rho - 1e-9);
}

TEST_CASE("nqz spectral radius matches the dim-2 exact maximum") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    SymmetricTensor a(3, 2);
    for (const MultiIndex& k : canonical_indices(3, 2))
      a.set(k.indices(), u(rng) + 0.05);
    const auto res = nqz_spectral_radius(a);
    const auto spectrum = h_spectrum_dim2(a);
    double mx = 0.0;
    for (const EigenPair& p : spectrum) mx = std::max(mx, p.lambda);
    CHECK(res.rho == doctest::Approx(mx).epsilon(1e-7));
  }
}

TEST_CASE("nqz handles reducible tensors via the stall perturbation") {
  SymmetricTensor a(3, 2);  // decoupled diagonal, zero pattern stalls ratios
  a.set({1, 1, 1}, 2.0);
  a.set({2, 2, 2}, 1.0);
  const auto res = nqz_spectral_radius(a);
  CHECK(res.rho == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("m-tensor classification is parametrization independent") {
  // A = s I - B for nonnegative B: verdict must not depend on which s >=
  // rho(B) the caller had in mind.
  const SymmetricTensor b = SymmetricTensor::all_ones(3, 2);  // rho = 4
  for (double s : {4.0, 5.0, 9.0}) {
    const SymmetricTensor a = SymmetricTensor::identity(3, 2) * s - b;
    const MClass verdict = m_tensor_class(a);
    if (s == 4.0) {
      CHECK(verdict == MClass::M);
    } else {
      CHECK(verdict == MClass::StrongM);
    }
  }
  const SymmetricTensor not_m =
      SymmetricTensor::identity(3, 2) * 1.0 - SymmetricTensor::all_ones(3, 2);
  CHECK(m_tensor_class(not_m) == MClass::NotM);
  CHECK(m_tensor_class(SymmetricTensor::all_ones(3, 2)) == MClass::NotZ);
}

TEST_CASE("comparison tensor and h-tensor class") {
  SymmetricTensor a(3, 2);
  a.set({1, 1, 1}, 3.0);
  a.set({2, 2, 2}, 3.0);
  a.set({1, 1, 2}, 0.5);
  a.set({1, 2, 2}, 0.5);
  const SymmetricTensor c = comparison_tensor(a);
  CHECK(c.at({1, 1, 1}) == doctest::Approx(3.0));
  CHECK(c.at({1, 1, 2}) == doctest::Approx(-0.5));
  CHECK(h_tensor_class(a) == HClass::StrongH);
  CHECK(h_tensor_class(SymmetricTensor::all_ones(3, 2)) == HClass::NotH);
}

TEST_CASE("exact dim-2 spectrum on diagonal tensors") {
  const auto sp = h_spectrum_dim2(SymmetricTensor::diagonal(3, {2.0, 5.0}));
  REQUIRE(sp.size() == 2);
  std::vector<double> ls = {sp[0].lambda, sp[1].lambda};
  std::sort(ls.begin(), ls.end());
  CHECK(ls[0] == doctest::Approx(2.0));
  CHECK(ls[1] == doctest::Approx(5.0));
  for (const EigenPair& p : sp) CHECK(p.residual <= 1e-10);
}

TEST_CASE("exact dim-2 spectrum finds the identity's single eigenvalue") {
  const auto sp = h_spectrum_dim2(SymmetricTensor::identity(3, 2));
  REQUIRE_FALSE(sp.empty());
  for (const EigenPair& p : sp) {
    CHECK(p.lambda == doctest::Approx(1.0));
    CHECK(p.residual <= 1e-10);
  }
}

TEST_CASE("eigen search reverifies residuals and finds the dominant pair") {
  const SymmetricTensor a = SymmetricTensor::all_ones(3, 2);
  SearchOptions opts;
  opts.restarts = 100;
  opts.seed = 9;
  const auto pairs = h_eigen_search(a, opts);
  REQUIRE_FALSE(pairs.empty());
  bool found4 = false;
  for (const EigenPair& p : pairs) {
    CHECK(p.residual <= opts.tol);
    if (std::abs(p.lambda - 4.0) < 1e-8) found4 = true;  // x = e pair
  }
  CHECK(found4);
}

TEST_CASE("copositivity probe certifies vertices and finds witnesses") {
  CHECK(copositivity_probe(SymmetricTensor::identity(3, 3)).status ==
        Status::CertifiedYes);
  SymmetricTensor a(3, 2);  // negative diagonal entry fails at a vertex
  a.set({1, 1, 1}, -1.0);
  const Verdict v = copositivity_probe(a);
  CHECK(v.status == Status::CertifiedNo);
  CHECK(std::holds_alternative<VectorWitness>(v.witness));
}

TEST_CASE("classify_dnn certifies by structure and refutes by eigenpair") {
  CHECK(classify_dnn(SymmetricTensor::identity(3, 3)).status ==
        Status::CertifiedYes);
  // negative entry: immediate No with an index witness
  SymmetricTensor neg(3, 2);
  neg.set({1, 1, 2}, -1.0);
  const Verdict v = classify_dnn(neg);
  CHECK(v.status == Status::CertifiedNo);
  CHECK(std::holds_alternative<IndexWitness>(v.witness));
  // n=2 exact spectrum: zero diagonal with full off-diagonal mass has the
  // H-eigenpair lambda = -1 at x = (1, -1)
  SymmetricTensor mixed(3, 2);
  mixed.set({1, 1, 2}, 1.0);
  mixed.set({1, 2, 2}, 1.0);
  const Verdict w = classify_dnn(mixed);
  CHECK(w.status == Status::CertifiedNo);
  CHECK(std::holds_alternative<EigenWitness>(w.witness));
}

TEST_CASE("classify_dnn strong variant requires strict eigenvalues") {
  CHECK(classify_dnn(SymmetricTensor::identity(3, 2),
                     ClassifyOptions{.strong = true})
            .status == Status::CertifiedYes);
  // diag(1, 0) has H-eigenvalue 0: not strongly DNN
  const Verdict v = classify_dnn(SymmetricTensor::diagonal(3, {1.0, 0.0}),
                                 ClassifyOptions{.strong = true});
  CHECK(v.status == Status::CertifiedNo);
}

TEST_CASE("generalized dominance via a supplied scaling") {
  // row 1 off-diagonal mass 2*0.6 = 1.2 beats the diagonal 1; scaling
  // d = (1, 0.5) shrinks it to 0.6 while row 2 stays dominant
  SymmetricTensor a(3, 2);
  a.set({1, 1, 1}, 1.0);
  a.set({2, 2, 2}, 8.0);
  a.set({1, 1, 2}, 0.6);
  CHECK(diagonal_dominance_class(a) == DominanceClass::None);
  CHECK(diagonal_dominance_class(diag_scale(a, {1.0, 0.5})) !=
        DominanceClass::None);
  ClassifyOptions opts;
  opts.scaling = std::vector<double>{1.0, 0.5};
  CHECK(classify_dnn(a, opts).status == Status::CertifiedYes);
}

TEST_CASE("row-balance heuristic finds a scaling for scaled identity mixes") {
  SymmetricTensor a(3, 2);
  a.set({1, 1, 1}, 1.0);
  a.set({2, 2, 2}, 8.0);
  a.set({1, 1, 2}, 0.4);
  const auto d = find_dominance_scaling(a);
  REQUIRE(d.has_value());
  CHECK(diagonal_dominance_class(diag_scale(a, *d)) != DominanceClass::None);
}
