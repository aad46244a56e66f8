#include "cpt/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "cpt/polynomial.hpp"

namespace cpt {

double h_eigen_residual(const SymmetricTensor& a, double lambda,
                        const std::vector<double>& x) {
  const std::vector<double> ax = cpt::apply(a, x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r = std::max(r, std::abs(ax[i] - lambda * std::pow(x[i], a.order() - 1)));
  }
  return r;
}

double z_eigen_residual(const SymmetricTensor& a, double lambda,
                        const std::vector<double>& x) {
  const std::vector<double> ax = cpt::apply(a, x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    r = std::max(r, std::abs(ax[i] - lambda * x[i]));
  double norm = 0.0;
  for (double v : x) norm += v * v;
  r = std::max(r, std::abs(norm - 1.0));
  return r;
}

EigenKind classify_eigenvector(const std::vector<double>& x, double tol) {
  bool nonneg = true, positive = true;
  for (double v : x) {
    if (v < -tol) nonneg = false;
    if (v <= tol) positive = false;
  }
  if (positive) return EigenKind::HPlusPlus;
  if (nonneg) return EigenKind::HPlus;
  return EigenKind::H;
}

namespace {

void normalize_inf(std::vector<double>& x) {
  double mx = 0.0;
  int arg = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > mx) {
      mx = std::abs(x[i]);
      arg = static_cast<int>(i);
    }
  }
  if (mx == 0.0) return;
  const double s = (x[arg] < 0.0 ? -1.0 : 1.0) / mx;
  for (double& v : x) v *= s;
}

}  // namespace

SpectralRadiusResult nqz_spectral_radius(const SymmetricTensor& b, double tol,
                                         int max_iter) {
  if (!b.is_nonnegative())
    throw TensorError("spectral radius iteration requires a nonnegative tensor");
  const int n = b.dim(), m = b.order();
  SpectralRadiusResult res;

  SymmetricTensor work = b;
  std::vector<double> x(n, 1.0);
  double best_gap = std::numeric_limits<double>::infinity();
  int stall = 0;
  double lo_best = 0.0, hi_best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    const std::vector<double> y = cpt::apply(work, x);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    bool degenerate = false;
    for (int i = 0; i < n; ++i) {
      const double denom = std::pow(x[i], m - 1);
      if (denom <= 0.0) {
        degenerate = true;
        break;
      }
      const double ratio = y[i] / denom;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    if (!degenerate) {
      lo_best = std::max(lo_best, lo);
      hi_best = std::min(hi_best, hi);
      res.lo = lo_best;
      res.hi = hi_best;
      res.rho = 0.5 * (lo_best + hi_best);
      const double gap = hi_best - lo_best;
      const double scale = std::max(1.0, hi_best);
      if (gap <= tol * scale) {
        res.converged = true;
        return res;
      }
      if (gap < best_gap - tol * scale * 0.01) {
        best_gap = gap;
        stall = 0;
      } else {
        ++stall;
      }
    }
    if (degenerate || stall >= 50) {
      if (res.perturbation == 0.0) {
        // weak irreducibility is not guaranteed; nudge every entry
        const double delta = 1e-10 * std::max(1.0, work.max_abs_entry());
        work = work + SymmetricTensor::all_ones(m, n) * delta;
        res.perturbation = delta;
        x.assign(n, 1.0);
        lo_best = 0.0;
        hi_best = std::numeric_limits<double>::infinity();
        best_gap = std::numeric_limits<double>::infinity();
        stall = 0;
        continue;
      }
      break;  // already perturbed; return the last bracket, unconverged
    }
    // x <- (B x^{m-1})^{[1/(m-1)]}, max-normalized
    double mx = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = std::pow(std::max(y[i], 0.0), 1.0 / (m - 1));
      mx = std::max(mx, x[i]);
    }
    if (mx == 0.0) {  // zero tensor
      res.lo = res.hi = res.rho = 0.0;
      res.converged = true;
      return res;
    }
    for (double& v : x) v /= mx;
  }
  return res;
}

MClass m_tensor_class(const SymmetricTensor& a, double tol) {
  const int n = a.dim(), m = a.order();
  const double scale = std::max(1.0, a.max_abs_entry());
  double s = 0.0;
  for (const auto& [k, v] : a.entries()) {
    if (!k.is_diagonal() && v > tol * scale) return MClass::NotZ;
  }
  for (int i = 1; i <= n; ++i) s = std::max(s, a.at(std::vector<int>(m, i)));
  const SymmetricTensor b = SymmetricTensor::identity(m, n) * s - a;
  const auto rho = nqz_spectral_radius(b);
  const double slack = tol * std::max(1.0, std::abs(s)) +
                       (rho.converged ? 0.0 : 0.0);
  if (s < rho.lo - slack) return MClass::NotM;
  if (s > rho.hi + slack) return MClass::StrongM;
  return MClass::M;
}

SymmetricTensor comparison_tensor(const SymmetricTensor& a) {
  SymmetricTensor out(a.order(), a.dim());
  for (const auto& [k, v] : a.entries())
    out.set(k.indices(), k.is_diagonal() ? std::abs(v) : -std::abs(v));
  return out;
}

HClass h_tensor_class(const SymmetricTensor& a, double tol) {
  switch (m_tensor_class(comparison_tensor(a), tol)) {
    case MClass::StrongM: return HClass::StrongH;
    case MClass::M: return HClass::H;
    default: return HClass::NotH;
  }
}

// ---- exact n=2 spectrum --------------------------------------------------

namespace {

// (A (1,t)^{m-1})_i as a polynomial in t, degree <= m-1.
Polynomial row_polynomial(const SymmetricTensor& a, int row) {
  const int m = a.order();
  std::vector<double> coeffs(m, 0.0);
  for (const MultiIndex& rest : canonical_indices(m - 1, 2)) {
    std::vector<int> full = rest.indices();
    full.push_back(row);
    const double v = a.at(full);
    if (v == 0.0) continue;
    int twos = 0;
    for (int idx : rest.indices()) {
      if (idx == 2) ++twos;
    }
    coeffs[twos] += v * static_cast<double>(rest.multiplicity());
  }
  return Polynomial(std::move(coeffs));
}

void push_unique(std::vector<EigenPair>& pairs, EigenPair p) {
  for (const EigenPair& q : pairs) {
    if (std::abs(q.lambda - p.lambda) > 1e-6) continue;
    double diff = 0.0, diff_neg = 0.0;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      diff = std::max(diff, std::abs(p.x[i] - q.x[i]));
      diff_neg = std::max(diff_neg, std::abs(p.x[i] + q.x[i]));
    }
    if (diff < 1e-6 || diff_neg < 1e-6) return;
  }
  pairs.push_back(std::move(p));
}

}  // namespace

std::vector<EigenPair> h_spectrum_dim2(const SymmetricTensor& a) {
  if (a.dim() != 2) throw TensorError("exact spectrum requires n = 2");
  const int m = a.order();
  const Polynomial f1 = row_polynomial(a, 1);
  const Polynomial f2 = row_polynomial(a, 2);
  const double scale = std::max(1.0, a.max_abs_entry());

  // g(t) = t^{m-1} f1(t) - f2(t); roots give eigenvectors (1, t).
  std::vector<double> gc(2 * m - 1, 0.0);
  for (std::size_t i = 0; i < f1.coeffs().size(); ++i)
    gc[i + m - 1] += f1.coeffs()[i];
  for (std::size_t i = 0; i < f2.coeffs().size(); ++i) gc[i] -= f2.coeffs()[i];
  const Polynomial g(std::move(gc));

  std::vector<EigenPair> pairs;
  const auto add_pair = [&](std::vector<double> x) {
    normalize_inf(x);
    // lambda from the larger-magnitude component
    const int i = std::abs(x[0]) >= std::abs(x[1]) ? 0 : 1;
    const std::vector<double> ax = cpt::apply(a, x);
    const double lambda = ax[i] / std::pow(x[i], m - 1);
    EigenPair p;
    p.lambda = lambda;
    p.x = std::move(x);
    p.residual = h_eigen_residual(a, lambda, p.x);
    if (p.residual > 1e-9 * scale) return;
    // cheap polish: merge nearly-identical lambdas later via push_unique
    p.kind = classify_eigenvector(p.x);
    push_unique(pairs, std::move(p));
  };

  if (g.is_zero(1e-12 * scale)) {
    // every direction solves the system; sample and cluster the lambdas
    for (int k = -10; k <= 10; ++k) add_pair({1.0, 0.2 * k});
    add_pair({0.0, 1.0});
  } else {
    for (double t : real_roots(g)) {
      // Newton polish on g for residual-grade accuracy
      const Polynomial dg = g.derivative();
      for (int it = 0; it < 4; ++it) {
        const double d = dg(t);
        if (std::abs(d) < 1e-300) break;
        const double step = g(t) / d;
        if (!std::isfinite(step) || std::abs(step) > 1e-3) break;
        t -= step;
      }
      add_pair({1.0, t});
    }
    // the x1 = 0 boundary direction
    if (std::abs(f1.coeffs().size() >= static_cast<std::size_t>(m)
                     ? f1.coeffs()[m - 1]
                     : 0.0) <= 1e-12 * scale) {
      add_pair({0.0, 1.0});
    }
  }
  return pairs;
}

// ---- Newton search -------------------------------------------------------

namespace {

Eigen::MatrixXd partial_matrix(const SymmetricTensor& a, const std::vector<double>& x) {
  const int n = a.dim(), m = a.order();
  Eigen::MatrixXd b(n, n);
  if (m == 2) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) b(i - 1, j - 1) = a.at({i, j});
    return b;
  }
  const SymmetricTensor c = contract(a, x, m - 2);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) b(i - 1, j - 1) = c.at({i, j});
  return b;
}

}  // namespace

std::vector<EigenPair> h_eigen_search(const SymmetricTensor& a,
                                      const SearchOptions& opts) {
  const int n = a.dim(), m = a.order();
  const double scale = std::max(1.0, a.max_abs_entry());
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<EigenPair> pairs;

  for (int trial = 0; trial < opts.restarts; ++trial) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = gauss(rng);
    if (x.norm() == 0.0) continue;
    x.normalize();
    // sign-orthant restart pattern: force the orthant by trial index
    if (n <= 20) {
      for (int i = 0; i < n; ++i) {
        if ((trial >> (i % 20)) & 1) x(i) = -std::abs(x(i));
      }
      if (x.norm() == 0.0) continue;
      x.normalize();
    }
    std::vector<double> xv(x.data(), x.data() + n);
    double lambda = 0.0;
    {
      const auto ax = cpt::apply(a, xv);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i) {
        num += ax[i] * x(i);
        den += std::pow(x(i), m);
      }
      lambda = std::abs(den) > 1e-12 ? num / den : 0.0;
    }

    bool converged = false;
    for (int step = 0; step < opts.max_newton_steps; ++step) {
      const auto ax = cpt::apply(a, xv);
      Eigen::VectorXd f(n + 1);
      for (int i = 0; i < n; ++i)
        f(i) = ax[i] - lambda * std::pow(x(i), m - 1);
      f(n) = x.squaredNorm() - 1.0;
      if (f.head(n).lpNorm<Eigen::Infinity>() <= opts.tol * scale &&
          std::abs(f(n)) <= 1e-12) {
        converged = true;
        break;
      }
      Eigen::MatrixXd jac(n + 1, n + 1);
      jac.topLeftCorner(n, n) = (m - 1) * partial_matrix(a, xv);
      for (int i = 0; i < n; ++i) {
        jac(i, i) -= lambda * (m - 1) * std::pow(x(i), m - 2);
        jac(i, n) = -std::pow(x(i), m - 1);
        jac(n, i) = 2.0 * x(i);
      }
      jac(n, n) = 0.0;
      const Eigen::VectorXd delta = jac.fullPivLu().solve(-f);
      if (!delta.allFinite()) break;
      double damp = 1.0;
      if (delta.norm() > 1.0) damp = 1.0 / delta.norm();
      x += damp * delta.head(n);
      lambda += damp * delta(n);
      if (x.norm() < 1e-8) break;
      for (int i = 0; i < n; ++i) xv[i] = x(i);
    }
    if (!converged) continue;

    EigenPair p;
    p.x = xv;
    normalize_inf(p.x);
    // recompute lambda at the normalized vector
    const auto ax = cpt::apply(a, p.x);
    int arg = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(p.x[i]) > std::abs(p.x[arg])) arg = i;
    }
    p.lambda = ax[arg] / std::pow(p.x[arg], m - 1);
    p.residual = h_eigen_residual(a, p.lambda, p.x);
    if (p.residual > opts.tol * scale) continue;
    p.kind = classify_eigenvector(p.x);
    push_unique(pairs, std::move(p));
  }
  return pairs;
}

// ---- copositivity --------------------------------------------------------

namespace {

void simplex_lattice(int n, int depth, const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<int> comp(n, 0);
  std::vector<double> x(n, 0.0);
  // enumerate compositions of depth into n nonnegative parts
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      comp[pos] = left;
      for (int i = 0; i < n; ++i) x[i] = static_cast<double>(comp[i]) / depth;
      visit(x);
      return;
    }
    for (int k = left; k >= 0; --k) {
      comp[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, depth);
}

}  // namespace

Verdict copositivity_probe(const SymmetricTensor& a, const CopositivityOptions& opts) {
  const int n = a.dim(), m = a.order();
  const double scale = std::max(1.0, a.max_abs_entry());

  // vertices first: A e_i^m is a diagonal entry
  for (int i = 1; i <= n; ++i) {
    const double v = a.at(std::vector<int>(m, i));
    if (v < -opts.tol * scale) {
      VectorWitness w;
      w.x.assign(n, 0.0);
      w.x[i - 1] = 1.0;
      w.value = v;
      w.detail = "negative value at a simplex vertex";
      return Verdict::no(w, "vertex-negative");
    }
  }

  if (a.is_nonnegative(opts.tol * scale))
    return Verdict::yes("nonnegative-entries");

  if (n > opts.max_dim)
    throw TensorError("copositivity grid probe dimension guard exceeded");

  Verdict out = Verdict::unknown("grid-scan");
  bool found_negative = false;
  VectorWitness neg;
  std::vector<std::vector<double>> positive_zeros;
  simplex_lattice(n, opts.grid_depth, [&](const std::vector<double>& x) {
    if (found_negative) return;
    const double v = evaluate_form(a, x);
    if (v < -opts.tol * scale) {
      found_negative = true;
      neg.x = x;
      neg.value = v;
      neg.detail = "negative value on the simplex lattice";
      return;
    }
    const bool strictly_positive =
        std::all_of(x.begin(), x.end(), [](double c) { return c > 0.0; });
    if (strictly_positive && std::abs(v) <= kZeroTol * scale)
      positive_zeros.push_back(x);
  });
  if (found_negative) return Verdict::no(neg, "grid-negative");

  // consequence check at interior zeros: A x^{m-1} = 0 and A x^{m-2} PSD
  for (const auto& x : positive_zeros) {
    const auto ax = cpt::apply(a, x);
    bool grad_zero = true;
    for (double v : ax) {
      if (std::abs(v) > 1e-8 * scale) grad_zero = false;
    }
    bool psd = true;
    if (m >= 3) {
      const SymmetricTensor h = contract(a, x, m - 2);
      Eigen::MatrixXd hm(n, n);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) hm(i - 1, j - 1) = h.at({i, j});
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hm);
      psd = es.eigenvalues().minCoeff() >= -1e-8 * scale;
    }
    out.evidence.push_back(grad_zero && psd ? "positive-zero-consequence-holds"
                                            : "positive-zero-consequence-failed");
  }

  // sufficient certificates for a Yes (even order only for sign-mixed input)
  if (m % 2 == 0) {
    bool diag_nonneg = true;
    for (int i = 1; i <= n; ++i) {
      if (a.at(std::vector<int>(m, i)) < -opts.tol * scale) diag_nonneg = false;
    }
    if (diag_nonneg && diagonal_dominance_class(a) != DominanceClass::None) {
      out.status = Status::CertifiedYes;
      out.evidence.push_back("diagonal-dominance");
      return out;
    }
    if (diag_nonneg && h_tensor_class(a) != HClass::NotH) {
      out.status = Status::CertifiedYes;
      out.evidence.push_back("h-tensor");
      return out;
    }
  }
  out.evidence.push_back("no-negative-found");
  return out;
}

// ---- DNN classifier ------------------------------------------------------

std::optional<std::vector<double>> find_dominance_scaling(const SymmetricTensor& a,
                                                          int steps) {
  const int n = a.dim(), m = a.order();
  std::vector<double> d(n, 1.0);
  const auto rests = canonical_indices(m - 1, n);
  for (int it = 0; it < steps; ++it) {
    const ScaledTensorView view(a, d);
    if (diagonal_dominance_class(view) != DominanceClass::None) return d;
    // row-balance update: shrink rows whose off-diagonal mass dominates
    bool ok = true;
    std::vector<double> next = d;
    for (int i = 1; i <= n; ++i) {
      const MultiIndex diag(std::vector<int>(m - 1, i));
      double off = 0.0;
      for (const MultiIndex& rest : rests) {
        if (rest == diag) continue;
        off += static_cast<double>(rest.multiplicity()) * std::abs(view.at(i, rest));
      }
      const double dg = std::abs(view.at(i, diag));
      if (dg <= 0.0) {
        ok = false;
        break;
      }
      const double ratio = off / dg;
      if (ratio > 1.0) next[i - 1] *= std::pow(ratio, 1.0 / (2.0 * (m - 1)));
    }
    if (!ok) return std::nullopt;
    d = std::move(next);
  }
  const ScaledTensorView view(a, d);
  if (diagonal_dominance_class(view) != DominanceClass::None) return d;
  return std::nullopt;
}

namespace {

/// Certificate via the rank-one-sum sufficient condition: every term weight
/// positive and either all vectors nonnegative or the sign-mixed vectors
/// share a strictly positive coordinate.
bool rank_one_sum_certificate(const SymmetricTensor& a,
                              const RankOneDecomposition& d, double tol) {
  const RankOneDecomposition norm = d.normalized(a.order());
  if (norm.empty()) return false;
  for (const RankOneTerm& t : norm.terms()) {
    if (t.weight <= 0.0) return false;
  }
  if (frobenius_distance(a, norm.reconstruct(a.order())) >
      1e-8 * std::max(1.0, a.frobenius_norm()))
    return false;
  std::vector<const RankOneTerm*> mixed;
  for (const RankOneTerm& t : norm.terms()) {
    const bool nonneg = std::all_of(t.vector.begin(), t.vector.end(),
                                    [&](double v) { return v >= -tol; });
    if (!nonneg) mixed.push_back(&t);
  }
  if (mixed.empty()) return true;
  for (int i = 0; i < norm.dim(); ++i) {
    const bool common = std::all_of(mixed.begin(), mixed.end(), [&](const RankOneTerm* t) {
      return t->vector[i] > tol;
    });
    if (common) return true;
  }
  return false;
}

}  // namespace

Verdict classify_dnn(const SymmetricTensor& a, const ClassifyOptions& opts) {
  Verdict v;
  const double scale = std::max(1.0, a.max_abs_entry());

  // (1) entrywise nonnegativity
  for (const auto& [k, val] : a.entries()) {
    if (val < -kZeroTol * scale) {
      IndexWitness w{k, "negative entry"};
      return Verdict::no(w, "negative-entry");
    }
  }
  v.evidence.push_back("entries-nonnegative");

  // (2) sufficient-condition battery
  const DominanceClass dd = diagonal_dominance_class(a);
  if (dd == DominanceClass::Strict ||
      (!opts.strong && dd == DominanceClass::Weak)) {
    v.status = Status::CertifiedYes;
    v.evidence.push_back(dd == DominanceClass::Strict ? "strict-diagonal-dominance"
                                                      : "diagonal-dominance");
    return v;
  }
  if (opts.scaling) {
    const DominanceClass gdd = diagonal_dominance_class(ScaledTensorView(a, *opts.scaling));
    if (gdd == DominanceClass::Strict || (!opts.strong && gdd == DominanceClass::Weak)) {
      v.status = Status::CertifiedYes;
      v.evidence.push_back("generalized-diagonal-dominance");
      return v;
    }
  }
  const HClass hc = h_tensor_class(a);
  if (hc == HClass::StrongH || (!opts.strong && hc == HClass::H)) {
    v.status = Status::CertifiedYes;
    v.evidence.push_back(hc == HClass::StrongH ? "strong-h-tensor" : "h-tensor");
    return v;
  }
  if (!opts.strong) {
    if (const auto gen = hankel_generating_vector(a)) {
      if (strong_hankel_test(*gen, a.order(), a.dim()).status == Status::CertifiedYes) {
        v.status = Status::CertifiedYes;
        v.evidence.push_back("strong-hankel");
        return v;
      }
    }
  }
  if (opts.decomposition) {
    if (opts.strong) {
      const auto& d = *opts.decomposition;
      if (d.is_nonnegative(a.order()) && d.spans_full_space() &&
          frobenius_distance(a, d.reconstruct(a.order())) <=
              1e-8 * std::max(1.0, a.frobenius_norm())) {
        v.status = Status::CertifiedYes;
        v.evidence.push_back("spanning-nonnegative-decomposition");
        return v;
      }
    } else if (rank_one_sum_certificate(a, *opts.decomposition, kZeroTol)) {
      v.status = Status::CertifiedYes;
      v.evidence.push_back("rank-one-sum-common-positive-coordinate");
      return v;
    }
  }
  if (!opts.strong && recognize_signless_laplacian(a)) {
    v.status = Status::CertifiedYes;
    v.evidence.push_back("signless-laplacian");
    return v;
  }

  // (3) the n = 2 exact route
  if (a.dim() == 2) {
    const auto spectrum = h_spectrum_dim2(a);
    v.evidence.push_back("exact-dim2-spectrum");
    for (const EigenPair& p : spectrum) {
      const bool bad = opts.strong ? p.lambda <= opts.tol * scale
                                   : p.lambda < -opts.tol * scale;
      if (bad) {
        EigenWitness w{p.lambda, p.x, p.residual};
        return Verdict::no(w, opts.strong ? "nonpositive-h-eigenvalue"
                                          : "negative-h-eigenvalue");
      }
    }
    if (!spectrum.empty()) {
      v.status = Status::CertifiedYes;
      v.evidence.push_back(opts.strong ? "all-dim2-eigenvalues-positive"
                                       : "all-dim2-eigenvalues-nonnegative");
      return v;
    }
  }

  // (4) eigen search for a counterexample
  SearchOptions so;
  so.restarts = opts.restarts;
  so.seed = opts.seed;
  const auto found = h_eigen_search(a, so);
  v.evidence.push_back("h-eigen-search");
  for (const EigenPair& p : found) {
    const bool bad = opts.strong ? p.lambda <= -opts.tol * scale
                                 : p.lambda < -opts.tol * scale;
    if (bad) {
      EigenWitness w{p.lambda, p.x, p.residual};
      return Verdict::no(w, "negative-h-eigenvalue");
    }
  }
  v.status = Status::Unknown;
  v.evidence.push_back("no-negative-eigenvalue-found");
  return v;
}

}  // namespace cpt
