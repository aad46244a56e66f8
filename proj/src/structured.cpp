#include "cpt/structured.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace cpt {

void Hypergraph::add_edge(std::vector<int> edge) {
  std::sort(edge.begin(), edge.end());
  if (static_cast<int>(edge.size()) != m)
    throw TensorError("edge cardinality does not match m");
  if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
    throw TensorError("edge has a repeated vertex");
  if (edge.front() < 1 || edge.back() > n)
    throw TensorError("edge vertex out of range");
  edges.insert(std::move(edge));
}

std::vector<int> Hypergraph::degrees() const {
  std::vector<int> d(n, 0);
  for (const auto& e : edges) {
    for (int v : e) ++d[v - 1];
  }
  return d;
}

std::string Hypergraph::to_text() const {
  std::ostringstream os;
  os << n << ' ' << m << '\n';
  for (const auto& e : edges) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << '\n';
  }
  return os.str();
}

Hypergraph Hypergraph::from_text(const std::string& text) {
  std::istringstream is(text);
  Hypergraph g;
  if (!(is >> g.n >> g.m)) throw TensorError("bad hypergraph header");
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<int> edge;
    int v;
    while (ls >> v) edge.push_back(v);
    if (edge.empty()) continue;
    g.add_edge(std::move(edge));
  }
  return g;
}

// ---- Hankel --------------------------------------------------------------

SymmetricTensor hankel_from_vector(const std::vector<double>& v, int order, int dim) {
  const std::size_t want = static_cast<std::size_t>((dim - 1) * order + 1);
  if (v.size() != want)
    throw TensorError("hankel generating vector must have length (n-1)m+1");
  SymmetricTensor t(order, dim);
  for (const MultiIndex& k : canonical_indices(order, dim)) {
    int s = 0;
    for (int idx : k.indices()) s += idx;
    const double val = v[s - order];
    if (val != 0.0) t.set(k.indices(), val);
  }
  return t;
}

std::optional<std::vector<double>> hankel_generating_vector(const SymmetricTensor& a) {
  const int len = (a.dim() - 1) * a.order() + 1;
  std::vector<double> v(len, 0.0);
  std::vector<bool> seen(len, false);
  for (const MultiIndex& k : canonical_indices(a.order(), a.dim())) {
    int s = 0;
    for (int idx : k.indices()) s += idx;
    const double val = a.at(k);
    const int slot = s - a.order();
    if (!seen[slot]) {
      v[slot] = val;
      seen[slot] = true;
    } else if (std::abs(v[slot] - val) >
               kZeroTol * std::max(1.0, a.max_abs_entry())) {
      return std::nullopt;
    }
  }
  return v;
}

Verdict strong_hankel_test(const std::vector<double>& v, int order, int dim) {
  const int top = (dim - 1) * order;
  if (static_cast<int>(v.size()) != top + 1)
    throw TensorError("hankel generating vector must have length (n-1)m+1");
  const int size = (top + 2 + 1) / 2;  // ceil(((n-1)m+2)/2)
  const bool free_corner = (top % 2) == 1;

  const double scale = [&] {
    double mx = 0.0;
    for (double x : v) mx = std::max(mx, std::abs(x));
    return mx > 0.0 ? mx : 1.0;
  }();
  const double tol = 1e-10 * scale;

  const auto entry = [&](int i, int j) { return v[i + j]; };  // 0-based

  if (!free_corner) {
    Eigen::MatrixXd h(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) h(i, j) = entry(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.eigenvalues().minCoeff() >= -tol)
      return Verdict::yes("hankel-moment-matrix-psd");
    Verdict no = Verdict::no(std::monostate{}, "hankel-moment-matrix-indefinite");
    VectorWitness w;
    const auto vec = es.eigenvectors().col(0);
    w.x.assign(vec.data(), vec.data() + vec.size());
    w.value = es.eigenvalues().minCoeff();
    w.detail = "negative Rayleigh direction of the Hankel moment matrix";
    no.witness = w;
    return no;
  }

  // Free bottom-right corner: completable to PSD iff the leading block is
  // PSD and the border column lies in its range.
  const int b = size - 1;
  Eigen::MatrixXd blk(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) blk(i, j) = entry(i, j);
  Eigen::VectorXd border(b);
  for (int i = 0; i < b; ++i) border(i) = entry(i, b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk);
  if (es.eigenvalues().minCoeff() < -tol) {
    Verdict no = Verdict::no(std::monostate{}, "hankel-leading-block-indefinite");
    VectorWitness w;
    const auto vec = es.eigenvectors().col(0);
    w.x.assign(vec.data(), vec.data() + vec.size());
    w.value = es.eigenvalues().minCoeff();
    w.detail = "negative Rayleigh direction of the leading block";
    no.witness = w;
    return no;
  }
  // Range condition: the border must have no component along null directions.
  for (int i = 0; i < b; ++i) {
    if (es.eigenvalues()(i) <= tol) {
      const double comp = es.eigenvectors().col(i).dot(border);
      if (std::abs(comp) > tol) {
        Verdict no = Verdict::no(std::monostate{}, "hankel-border-outside-range");
        VectorWitness w;
        const auto vec = es.eigenvectors().col(i);
        w.x.assign(vec.data(), vec.data() + vec.size());
        w.value = comp;
        w.detail = "null direction of the leading block with nonzero border component";
        no.witness = w;
        return no;
      }
    }
  }
  return Verdict::yes("hankel-moment-matrix-psd-completable");
}

VandermondeSum vandermonde_sum(const std::vector<double>& xi,
                               const std::vector<double>& weights, int order, int dim) {
  if (xi.empty()) throw TensorError("need at least one Vandermonde node");
  if (weights.size() != xi.size())
    throw TensorError("weights and nodes must have equal length");
  std::vector<RankOneTerm> terms;
  terms.reserve(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) {
    std::vector<double> u(dim);
    double p = 1.0;
    for (int i = 0; i < dim; ++i) {
      u[i] = p;
      p *= xi[k];
    }
    terms.push_back({weights[k], std::move(u)});
  }
  VandermondeSum out{make_from_rank_one(terms, order),
                     RankOneDecomposition(std::move(terms))};
  return out;
}

// ---- Cauchy --------------------------------------------------------------

SymmetricTensor cauchy_from_vector(const std::vector<double>& c, int order) {
  const int n = static_cast<int>(c.size());
  for (double v : c) {
    if (v == 0.0) throw TensorError("cauchy generating vector has a zero component");
  }
  SymmetricTensor t(order, n);
  for (const MultiIndex& k : canonical_indices(order, n)) {
    double denom = 0.0;
    for (int idx : k.indices()) denom += c[idx - 1];
    if (std::abs(denom) < 1e-14) {
      std::ostringstream os;
      os << "cauchy denominator vanishes at index (";
      for (int i = 0; i < k.order(); ++i) os << (i ? "," : "") << k[i];
      os << ")";
      throw TensorError(os.str());
    }
    t.set(k.indices(), 1.0 / denom);
  }
  return t;
}

std::optional<std::vector<double>> cauchy_generating_vector(const SymmetricTensor& a,
                                                            double rel_tol) {
  const int n = a.dim(), m = a.order();
  std::vector<double> c(n);
  for (int i = 1; i <= n; ++i) {
    const double d = a.at(std::vector<int>(m, i));
    if (d == 0.0) return std::nullopt;
    c[i - 1] = 1.0 / (m * d);
  }
  for (const MultiIndex& k : canonical_indices(m, n)) {
    double denom = 0.0;
    for (int idx : k.indices()) denom += c[idx - 1];
    if (std::abs(denom) < 1e-14) return std::nullopt;
    const double want = 1.0 / denom;
    if (std::abs(a.at(k) - want) > rel_tol * std::max(1.0, std::abs(want)))
      return std::nullopt;
  }
  return c;
}

SymmetricTensor hilbert_tensor(int order, int dim) {
  SymmetricTensor t(order, dim);
  for (const MultiIndex& k : canonical_indices(order, dim)) {
    int s = 0;
    for (int idx : k.indices()) s += idx;
    t.set(k.indices(), 1.0 / (s - order + 1));
  }
  return t;
}

// ---- Circulant / Toeplitz ------------------------------------------------

namespace {

int wrap(int i, int n) {  // 1-based cyclic
  int r = (i - 1) % n;
  if (r < 0) r += n;
  return r + 1;
}

// Entry of the circulant fill at an arbitrary tuple: shift so the first
// slot becomes 1 and read the root at the rest.
double circulant_entry(const SymmetricTensor& root, int n, const std::vector<int>& idx) {
  const int shift = idx[0] - 1;
  std::vector<int> rest;
  rest.reserve(idx.size() - 1);
  for (std::size_t j = 1; j < idx.size(); ++j) rest.push_back(wrap(idx[j] - shift, n));
  return root.at(rest);
}

}  // namespace

CirculantResult circulant_from_root(const SymmetricTensor& root, int dim) {
  if (root.dim() != dim) throw TensorError("root dimension mismatch");
  const int m = root.order() + 1;
  CirculantResult out;
  out.diagonal_entry = root.at(std::vector<int>(m - 1, 1));

  // Doubly circulant: the root is invariant under the cyclic shift.
  out.doubly_circulant = true;
  for (const MultiIndex& k : canonical_indices(m - 1, dim)) {
    std::vector<int> shifted;
    for (int idx : k.indices()) shifted.push_back(wrap(idx + 1, dim));
    if (std::abs(root.at(k) - root.at(shifted)) >
        kZeroTol * std::max(1.0, root.max_abs_entry())) {
      out.doubly_circulant = false;
      break;
    }
  }

  // Symmetry: the value must not depend on which slot leads.
  const double tol = kZeroTol * std::max(1.0, root.max_abs_entry());
  SymmetricTensor filled(m, dim);
  bool symmetric = true;
  for (const MultiIndex& k : canonical_indices(m, dim)) {
    std::vector<int> tuple = k.indices();
    const double ref = circulant_entry(root, dim, tuple);
    for (int lead = 1; lead < m && symmetric; ++lead) {
      std::swap(tuple[0], tuple[lead]);
      if (std::abs(circulant_entry(root, dim, tuple) - ref) > tol) symmetric = false;
      std::swap(tuple[0], tuple[lead]);
    }
    if (!symmetric) break;
    if (ref != 0.0) filled.set(k.indices(), ref);
  }
  out.symmetric = symmetric;
  if (symmetric) out.tensor = std::move(filled);
  return out;
}

ToeplitzResult toeplitz_from_band(const std::map<std::vector<int>, double>& band,
                                  int order, int dim) {
  const auto lookup = [&](std::vector<int> offsets) {
    std::sort(offsets.begin(), offsets.end());
    auto it = band.find(offsets);
    return it == band.end() ? 0.0 : it->second;
  };
  double scale = 1.0;
  for (const auto& [k, v] : band) scale = std::max(scale, std::abs(v));
  const double tol = kZeroTol * scale;

  ToeplitzResult out;
  out.diagonal_entry = lookup(std::vector<int>(order - 1, 0));
  SymmetricTensor filled(order, dim);
  bool symmetric = true;
  for (const MultiIndex& k : canonical_indices(order, dim)) {
    // value relative to the smallest index; cross-check every other lead
    const auto& idx = k.indices();
    double ref = 0.0;
    for (int lead = 0; lead < order; ++lead) {
      std::vector<int> offsets;
      offsets.reserve(order - 1);
      for (int j = 0; j < order; ++j) {
        if (j != lead) offsets.push_back(idx[j] - idx[lead]);
      }
      const double v = lookup(std::move(offsets));
      if (lead == 0) {
        ref = v;
      } else if (std::abs(v - ref) > tol) {
        symmetric = false;
        break;
      }
    }
    if (!symmetric) break;
    if (ref != 0.0) filled.set(idx, ref);
  }
  out.symmetric = symmetric;
  if (symmetric) out.tensor = std::move(filled);
  return out;
}

// ---- Hypergraph tensors --------------------------------------------------

HypergraphTensors hypergraph_tensors(const Hypergraph& g) {
  SymmetricTensor adj(g.m, g.n);
  const double val = 1.0 / static_cast<double>(factorial(g.m - 1));
  for (const auto& e : g.edges) adj.set(e, val);
  SymmetricTensor q = adj;
  const auto deg = g.degrees();
  for (int i = 1; i <= g.n; ++i) {
    if (deg[i - 1] != 0)
      q.add(std::vector<int>(g.m, i), static_cast<double>(deg[i - 1]));
  }
  return {std::move(adj), std::move(q)};
}

std::optional<Hypergraph> recognize_signless_laplacian(const SymmetricTensor& a,
                                                       double tol) {
  Hypergraph g;
  g.n = a.dim();
  g.m = a.order();
  const double adj_val = 1.0 / static_cast<double>(factorial(g.m - 1));
  for (const auto& [k, v] : a.entries()) {
    if (k.is_diagonal()) continue;
    if (static_cast<int>(k.support().size()) != g.m) return std::nullopt;
    if (std::abs(v - adj_val) > tol) return std::nullopt;
    g.edges.insert(k.indices());
  }
  const auto deg = g.degrees();
  for (int i = 1; i <= g.n; ++i) {
    const double d = a.at(std::vector<int>(g.m, i));
    if (std::abs(d - deg[i - 1]) > tol) return std::nullopt;
  }
  return g;
}

// ---- Structural predicates -----------------------------------------------

namespace {

template <typename RowEntry>
DominanceClass dominance_from_rows(int order, int dim, RowEntry&& row_entry) {
  bool strict = true;
  const auto rests = canonical_indices(order - 1, dim);
  for (int i = 1; i <= dim; ++i) {
    const MultiIndex diag(std::vector<int>(order - 1, i));
    double off = 0.0;
    for (const MultiIndex& rest : rests) {
      if (rest == diag) continue;
      off += static_cast<double>(rest.multiplicity()) * std::abs(row_entry(i, rest));
    }
    const double d = std::abs(row_entry(i, diag));
    const double tol = kZeroTol * std::max(1.0, d + off);
    if (d < off - tol) return DominanceClass::None;
    if (d <= off + tol) strict = false;
  }
  return strict ? DominanceClass::Strict : DominanceClass::Weak;
}

}  // namespace

DominanceClass diagonal_dominance_class(const SymmetricTensor& a) {
  return dominance_from_rows(a.order(), a.dim(), [&](int i, const MultiIndex& rest) {
    std::vector<int> full = rest.indices();
    full.push_back(i);
    return a.at(full);
  });
}

DominanceClass diagonal_dominance_class(const ScaledTensorView& a) {
  return dominance_from_rows(a.order(), a.dim(), [&](int i, const MultiIndex& rest) {
    return a.at(i, rest);
  });
}

B0Class b0_class(const SymmetricTensor& a) {
  const int m = a.order(), n = a.dim();
  const auto rests = canonical_indices(m - 1, n);
  const double scale = std::max(1.0, a.max_abs_entry());
  for (int i = 1; i <= n; ++i) {
    double row_sum = 0.0;
    double row_max_offdiag = 0.0;
    bool has_offdiag = false;
    for (const MultiIndex& rest : rests) {
      std::vector<int> full = rest.indices();
      full.push_back(i);
      const double v = a.at(full);
      row_sum += static_cast<double>(rest.multiplicity()) * v;
      const bool diag = rest == MultiIndex(std::vector<int>(m - 1, i));
      if (!diag) {
        row_max_offdiag = has_offdiag ? std::max(row_max_offdiag, v) : v;
        has_offdiag = true;
      }
    }
    if (row_sum < -kZeroTol * scale) return B0Class::NotB0;
    const double mean = row_sum / std::pow(static_cast<double>(n), m - 1);
    if (has_offdiag && mean < row_max_offdiag - kZeroTol * scale) return B0Class::NotB0;
  }
  return B0Class::B0;
}

}  // namespace cpt
