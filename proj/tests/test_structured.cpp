#include <doctest.h>

#include <cmath>
#include <random>

#include "cpt/structured.hpp"
#include "cpt/tensor.hpp"

using namespace cpt;

TEST_CASE("hankel entries depend on the index sum only") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(7);  // (n-1)m+1 = 7 for m=3, n=3
  for (double& x : v) x = u(rng);
  const SymmetricTensor a = hankel_from_vector(v, 3, 3);
  CHECK(a.at({1, 2, 3}) == a.at({2, 2, 2}));  // both have index sum 6
  CHECK(a.at({1, 1, 3}) == a.at({1, 2, 2}));
  CHECK(a.at({1, 1, 1}) == v[0]);
  CHECK(a.at({3, 3, 3}) == v[6]);
  const auto rec = hankel_generating_vector(a);
  REQUIRE(rec.has_value());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK((*rec)[i] == v[i]);
}

TEST_CASE("non-hankel tensors yield no generating vector") {
  SymmetricTensor a(3, 3);
  a.set({1, 2, 3}, 1.0);
  a.set({2, 2, 2}, 2.0);  // same index sum, different value
  CHECK_FALSE(hankel_generating_vector(a).has_value());
}

TEST_CASE("vandermonde sum agrees with the hankel constructor") {
  // sum_k (1, xi_k, xi_k^2)^3 is a Hankel tensor generated by
  // v_s = sum_k xi_k^s,  s = 0..6
  const std::vector<double> xi = {0.5, -1.25, 2.0};
  const VandermondeSum vs = vandermonde_sum(xi, {1.0, 1.0, 1.0}, 3, 3);
  std::vector<double> v(7, 0.0);
  for (int s = 0; s <= 6; ++s)
    for (const double node : xi) v[s] += std::pow(node, s);
  const SymmetricTensor direct = hankel_from_vector(v, 3, 3);
  CHECK(frobenius_distance(vs.tensor, direct) <=
        1e-12 * direct.frobenius_norm());
  CHECK(frobenius_distance(vs.tensor, vs.decomposition.reconstruct(3)) <=
        1e-12 * direct.frobenius_norm());
}

TEST_CASE("strong hankel certification, even moment matrix") {
  // m=4, n=2: moment matrix is 3x3 on v_0..v_4; moments of a point mass at 2
  const std::vector<double> v = {1.0, 2.0, 4.0, 8.0, 16.0};
  CHECK(strong_hankel_test(v, 4, 2).status == Status::CertifiedYes);
  // indefinite: v = (1, 0, -1, 0, 1) has a negative 2x2 principal minor
  const std::vector<double> bad = {1.0, 0.0, -1.0, 0.0, 1.0};
  CHECK(strong_hankel_test(bad, 4, 2).status == Status::CertifiedNo);
}

TEST_CASE("strong hankel odd case uses the free-corner completion") {
  // m=3, n=2: (n-1)m = 3 is odd; moment matrix is 3x3 with a free corner.
  // moments of a point mass at 1: (1,1,1,1) completes with corner 1.
  CHECK(strong_hankel_test({1.0, 1.0, 1.0, 1.0}, 3, 2).status ==
        Status::CertifiedYes);
  // leading block fails: v0 = 0 but v1 != 0 breaks PSD regardless of corner
  CHECK(strong_hankel_test({0.0, 1.0, 0.0, 0.0}, 3, 2).status ==
        Status::CertifiedNo);
}

TEST_CASE("cauchy constructor and generator recovery") {
  const std::vector<double> c = {1.0, 2.0};
  const SymmetricTensor a = cauchy_from_vector(c, 3);
  CHECK(a.at({1, 1, 1}) == doctest::Approx(1.0 / 3.0));
  CHECK(a.at({1, 1, 2}) == doctest::Approx(1.0 / 4.0));
  CHECK(a.at({1, 2, 2}) == doctest::Approx(1.0 / 5.0));
  CHECK(a.at({2, 2, 2}) == doctest::Approx(1.0 / 6.0));
  const auto rec = cauchy_generating_vector(a);
  REQUIRE(rec.has_value());
  CHECK((*rec)[0] == doctest::Approx(1.0));
  CHECK((*rec)[1] == doctest::Approx(2.0));
  // perturbing one entry breaks recognition
  SymmetricTensor b = a;
  b.set({1, 2, 2}, 0.5);
  CHECK_FALSE(cauchy_generating_vector(b).has_value());
}

TEST_CASE("cauchy constructor rejects vanishing denominators") {
  CHECK_THROWS_AS(cauchy_from_vector({1.0, -2.0}, 3), TensorError);
}

TEST_CASE("hilbert tensor equals its cauchy and hankel forms exactly") {
  const SymmetricTensor h = hilbert_tensor(3, 2);
  // c_i = i - 1 + 1/m gives sum c = i1+..+im - m + 1
  const SymmetricTensor via_cauchy =
      cauchy_from_vector({1.0 / 3.0, 1.0 + 1.0 / 3.0}, 3);
  CHECK(frobenius_distance(h, via_cauchy) == 0.0);
  const SymmetricTensor via_hankel = hankel_from_vector(
      {1.0, 1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0}, 3, 2);
  CHECK(frobenius_distance(h, via_hankel) == 0.0);
}

TEST_CASE("circulant fill from a root tensor") {
  // m=3, n=3: root is the order-2 row tensor at row 1
  SymmetricTensor root(2, 3);
  root.set({1, 1}, 2.0);
  root.set({2, 3}, 1.0);
  root.set({3, 3}, 0.5);
  root.set({2, 2}, 0.5);
  const CirculantResult res = circulant_from_root(root, 3);
  CHECK(res.diagonal_entry == doctest::Approx(2.0));
  if (res.symmetric) {
    CHECK(res.tensor->at({1, 1, 1}) == doctest::Approx(2.0));
    // cyclic shift: a_{222} = a_{111}
    CHECK(res.tensor->at({2, 2, 2}) == doctest::Approx(2.0));
  }
}

TEST_CASE("toeplitz band constructor keys by offset tuple") {
  std::map<std::vector<int>, double> band;
  band[{0, 0}] = 3.0;  // diagonal
  band[{0, 1}] = 1.0;   // offsets (0,1) from the smallest index
  band[{-1, -1}] = 1.0;  // the same entries seen from the largest index
  const ToeplitzResult res = toeplitz_from_band(band, 3, 3);
  REQUIRE(res.symmetric);
  CHECK(res.diagonal_entry == doctest::Approx(3.0));
  CHECK(res.tensor->at({1, 1, 1}) == doctest::Approx(3.0));
  CHECK(res.tensor->at({2, 2, 2}) == doctest::Approx(3.0));
  CHECK(res.tensor->at({1, 1, 2}) == doctest::Approx(1.0));
  CHECK(res.tensor->at({2, 2, 3}) == doctest::Approx(1.0));  // shift invariance
  CHECK(res.tensor->at({1, 2, 3}) == doctest::Approx(0.0));
}

TEST_CASE("hypergraph text round-trip and tensor construction") {
  Hypergraph g;
  g.n = 4;
  g.m = 3;
  g.add_edge({3, 1, 2});
  g.add_edge({2, 3, 4});
  CHECK(g.degrees() == std::vector<int>{1, 2, 2, 1});
  const Hypergraph back = Hypergraph::from_text(g.to_text());
  CHECK(back.edges == g.edges);
  CHECK_THROWS_AS(g.add_edge({1, 1, 2}), TensorError);  // repeated vertex

  const HypergraphTensors t = hypergraph_tensors(g);
  CHECK(t.adjacency.at({1, 2, 3}) == doctest::Approx(0.5));  // 1/(m-1)!
  CHECK(t.adjacency.at({1, 2, 4}) == doctest::Approx(0.0));
  CHECK(t.signless_laplacian.at({2, 2, 2}) == doctest::Approx(2.0));  // degree
  CHECK(t.signless_laplacian.at({1, 2, 3}) == doctest::Approx(0.5));
  CHECK(t.signless_laplacian.at({1, 1, 2}) == doctest::Approx(0.0));

  const auto rec = recognize_signless_laplacian(t.signless_laplacian);
  REQUIRE(rec.has_value());
  CHECK(rec->edges == g.edges);
  CHECK_FALSE(recognize_signless_laplacian(t.adjacency).has_value());
}

TEST_CASE("diagonal dominance classes") {
  CHECK(diagonal_dominance_class(SymmetricTensor::identity(3, 3)) ==
        DominanceClass::Strict);
  CHECK(diagonal_dominance_class(SymmetricTensor::all_ones(3, 3)) ==
        DominanceClass::None);
  // single-edge 3-graph: row degree 1, off-diagonal expanded mass 1 -> weak
  Hypergraph g;
  g.n = 3;
  g.m = 3;
  g.add_edge({1, 2, 3});
  const SymmetricTensor q = hypergraph_tensors(g).signless_laplacian;
  CHECK(diagonal_dominance_class(q) == DominanceClass::Weak);
}

TEST_CASE("b0 class") {
  CHECK(b0_class(SymmetricTensor::all_ones(3, 3)) == B0Class::B0);
  CHECK(b0_class(SymmetricTensor::identity(3, 3)) == B0Class::B0);
  SymmetricTensor a = SymmetricTensor::identity(3, 3);
  a.set({1, 2, 3}, 50.0);  // off-diagonal spike above the row mean
  CHECK(b0_class(a) == B0Class::NotB0);
}
