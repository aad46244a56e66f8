#include "cpt/tensor.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace cpt {

void SymmetricTensor::check_bounds(const MultiIndex& key) const {
  if (key.order() != order_)
    throw TensorError("index tuple length does not match tensor order");
  for (int v : key.indices()) {
    if (v < 1 || v > dim_) throw TensorError("index out of range [1..n]");
  }
}

double SymmetricTensor::at(const std::vector<int>& indices) const {
  return at(MultiIndex(indices));
}

double SymmetricTensor::at(const MultiIndex& key) const {
  check_bounds(key);
  auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : it->second;
}

void SymmetricTensor::set(const std::vector<int>& indices, double value) {
  MultiIndex key(indices);
  check_bounds(key);
  if (value == 0.0) {
    entries_.erase(key);
  } else {
    entries_[key] = value;
  }
}

void SymmetricTensor::add(const std::vector<int>& indices, double value) {
  MultiIndex key(indices);
  check_bounds(key);
  double& slot = entries_[key];
  slot += value;
  if (slot == 0.0) entries_.erase(key);
}

bool SymmetricTensor::is_nonnegative(double tol) const {
  for (const auto& [k, v] : entries_) {
    if (v < -tol) return false;
  }
  return true;
}

double SymmetricTensor::min_entry() const {
  double mn = 0.0;  // absent entries are zero
  bool full = entries_.size() == canonical_count(order_, dim_);
  if (full && !entries_.empty()) mn = entries_.begin()->second;
  for (const auto& [k, v] : entries_) mn = std::min(mn, v);
  return mn;
}

double SymmetricTensor::max_abs_entry() const {
  double mx = 0.0;
  for (const auto& [k, v] : entries_) mx = std::max(mx, std::abs(v));
  return mx;
}

double SymmetricTensor::frobenius_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : entries_)
    s += static_cast<double>(k.multiplicity()) * v * v;
  return std::sqrt(s);
}

SymmetricTensor SymmetricTensor::operator+(const SymmetricTensor& other) const {
  if (order_ != other.order_ || dim_ != other.dim_)
    throw TensorError("shape mismatch");
  SymmetricTensor out(*this);
  for (const auto& [k, v] : other.entries_) out.add(k.indices(), v);
  return out;
}

SymmetricTensor SymmetricTensor::operator-(const SymmetricTensor& other) const {
  return *this + other * -1.0;
}

SymmetricTensor SymmetricTensor::operator*(double scale) const {
  SymmetricTensor out(order_, dim_);
  if (scale == 0.0) return out;
  for (const auto& [k, v] : entries_) out.entries_[k] = v * scale;
  return out;
}

SymmetricTensor SymmetricTensor::identity(int order, int dim) {
  SymmetricTensor t(order, dim);
  for (int i = 1; i <= dim; ++i) t.set(std::vector<int>(order, i), 1.0);
  return t;
}

SymmetricTensor SymmetricTensor::all_ones(int order, int dim) {
  SymmetricTensor t(order, dim);
  for (const MultiIndex& k : canonical_indices(order, dim))
    t.set(k.indices(), 1.0);
  return t;
}

SymmetricTensor SymmetricTensor::diagonal(int order, const std::vector<double>& d) {
  SymmetricTensor t(order, static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    t.set(std::vector<int>(order, static_cast<int>(i) + 1), d[i]);
  return t;
}

double frobenius_distance(const SymmetricTensor& a, const SymmetricTensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim())
    throw TensorError("shape mismatch");
  return (a - b).frobenius_norm();
}

SymmetricTensor RankOneDecomposition::reconstruct(int order) const {
  if (terms_.empty()) throw TensorError("empty decomposition");
  return make_from_rank_one(terms_, order);
}

bool RankOneDecomposition::is_nonnegative(int order, double tol) const {
  const RankOneDecomposition norm = normalized(order);
  for (const RankOneTerm& t : norm.terms()) {
    if (t.weight < -tol) return false;
    for (double v : t.vector) {
      if (v < -tol) return false;
    }
  }
  return true;
}

bool RankOneDecomposition::spans_full_space(double tol) const {
  if (terms_.empty()) return false;
  const int n = dim();
  Eigen::MatrixXd u(n, static_cast<int>(terms_.size()));
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    for (int i = 0; i < n; ++i) u(i, static_cast<int>(k)) = terms_[k].vector[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return false;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank == n;
}

RankOneDecomposition RankOneDecomposition::normalized(int order) const {
  std::vector<RankOneTerm> out;
  out.reserve(terms_.size());
  for (const RankOneTerm& t : terms_) {
    RankOneTerm r = t;
    if (r.weight > 0.0 && r.weight != 1.0) {
      const double s = std::pow(r.weight, 1.0 / order);
      for (double& v : r.vector) v *= s;
      r.weight = 1.0;
    } else if (r.weight < 0.0 && order % 2 == 1) {
      // odd order: a real m-th root exists but flips every vector sign,
      // leaving the term non-nonnegative; keep the weight explicit.
    }
    out.push_back(std::move(r));
  }
  return RankOneDecomposition(std::move(out));
}

SymmetricTensor make_from_rank_one(const std::vector<RankOneTerm>& terms, int order) {
  if (terms.empty()) throw TensorError("need at least one rank-one term");
  const int n = static_cast<int>(terms[0].vector.size());
  for (const RankOneTerm& t : terms) {
    if (static_cast<int>(t.vector.size()) != n)
      throw TensorError("dimension mismatch among rank-one vectors");
  }
  SymmetricTensor out(order, n);
  for (const MultiIndex& k : canonical_indices(order, n)) {
    double val = 0.0;
    for (const RankOneTerm& t : terms) {
      double prod = t.weight;
      for (int idx : k.indices()) prod *= t.vector[idx - 1];
      val += prod;
    }
    if (val != 0.0) out.set(k.indices(), val);
  }
  return out;
}

double evaluate_form(const SymmetricTensor& a, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != a.dim()) throw TensorError("shape mismatch");
  double s = 0.0;
  for (const auto& [k, v] : a.entries()) {
    double prod = v * static_cast<double>(k.multiplicity());
    for (int idx : k.indices()) prod *= x[idx - 1];
    s += prod;
  }
  return s;
}

SymmetricTensor contract(const SymmetricTensor& a, const std::vector<double>& x, int l) {
  if (static_cast<int>(x.size()) != a.dim()) throw TensorError("shape mismatch");
  const int m = a.order();
  if (l < 1 || l >= m) throw TensorError("contraction count out of range [1..m-1]");
  SymmetricTensor out(m - l, a.dim());
  // Group the ordered sum over the contracted slots by canonical l-tuple.
  const auto tails = canonical_indices(l, a.dim());
  for (const MultiIndex& head : canonical_indices(m - l, a.dim())) {
    double val = 0.0;
    for (const MultiIndex& tail : tails) {
      std::vector<int> full = head.indices();
      full.insert(full.end(), tail.indices().begin(), tail.indices().end());
      const double entry = a.at(full);
      if (entry == 0.0) continue;
      double prod = entry * static_cast<double>(tail.multiplicity());
      for (int idx : tail.indices()) prod *= x[idx - 1];
      val += prod;
    }
    if (val != 0.0) out.set(head.indices(), val);
  }
  return out;
}

std::vector<double> apply(const SymmetricTensor& a, const std::vector<double>& x) {
  const SymmetricTensor v = contract(a, x, a.order() - 1);
  std::vector<double> out(a.dim(), 0.0);
  for (int i = 1; i <= a.dim(); ++i) out[i - 1] = v.at(std::vector<int>{i});
  return out;
}

SymmetricTensor matrix_transform(const SymmetricTensor& a,
                                 const std::vector<std::vector<double>>& p) {
  const int rows = static_cast<int>(p.size());
  if (rows == 0) throw TensorError("empty matrix");
  for (const auto& row : p) {
    if (static_cast<int>(row.size()) != a.dim())
      throw TensorError("matrix column count must equal tensor dimension");
  }
  const int m = a.order();
  SymmetricTensor out(m, rows);
  // (P^m A)_I = sum over canonical J of a_J * sum over distinct perms of J
  // of prod p_{i_k, j_k}. The inner permanent-style sum is computed by
  // recursion over the multiset J.
  const auto targets = canonical_indices(m, rows);
  for (const MultiIndex& target : targets) {
    double val = 0.0;
    for (const auto& [j, aj] : a.entries()) {
      // sum over distinct permutations of j of prod_k p[target_k][perm_k]
      std::vector<int> perm = j.indices();
      double sum = 0.0;
      do {
        double prod = 1.0;
        for (int k = 0; k < m; ++k) prod *= p[target[k] - 1][perm[k] - 1];
        sum += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      val += aj * sum;
    }
    if (std::abs(val) > 0.0) out.set(target.indices(), val);
  }
  return out;
}

ScaledTensorView::ScaledTensorView(const SymmetricTensor& a, std::vector<double> d)
    : a_(a), d_(std::move(d)) {
  if (static_cast<int>(d_.size()) != a_.dim())
    throw TensorError("scaling vector length must equal tensor dimension");
  for (double v : d_) {
    if (v <= 0.0) throw TensorError("scaling vector must be strictly positive");
  }
}

double ScaledTensorView::at(int row, const MultiIndex& rest) const {
  std::vector<int> full = rest.indices();
  full.push_back(row);
  double v = a_.at(full);
  if (v == 0.0) return 0.0;
  v *= std::pow(d_[row - 1], 1.0 - a_.order());
  for (int idx : rest.indices()) v *= d_[idx - 1];
  return v;
}

ScaledTensorView diag_scale(const SymmetricTensor& a, const std::vector<double>& d) {
  return ScaledTensorView(a, d);
}

SymmetricTensor hadamard(const SymmetricTensor& a, const SymmetricTensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim())
    throw TensorError("shape mismatch");
  SymmetricTensor out(a.order(), a.dim());
  for (const auto& [k, v] : a.entries()) {
    const double w = b.at(k);
    if (w != 0.0) out.set(k.indices(), v * w);
  }
  return out;
}

SymmetricTensor principal_subtensor(const SymmetricTensor& a, std::vector<int> gamma) {
  if (gamma.empty()) throw TensorError("index subset must be nonempty");
  std::sort(gamma.begin(), gamma.end());
  gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
  for (int g : gamma) {
    if (g < 1 || g > a.dim()) throw TensorError("subset member out of range");
  }
  std::vector<int> pos(a.dim() + 1, 0);
  for (std::size_t i = 0; i < gamma.size(); ++i) pos[gamma[i]] = static_cast<int>(i) + 1;
  SymmetricTensor out(a.order(), static_cast<int>(gamma.size()));
  for (const auto& [k, v] : a.entries()) {
    std::vector<int> mapped;
    mapped.reserve(k.order());
    bool inside = true;
    for (int idx : k.indices()) {
      if (pos[idx] == 0) {
        inside = false;
        break;
      }
      mapped.push_back(pos[idx]);
    }
    if (inside) out.set(mapped, v);
  }
  return out;
}

}  // namespace cpt
