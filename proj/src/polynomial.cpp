#include "cpt/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace cpt {
namespace {

// Remainder of a / b, with every intermediate normalized to keep the chain
// numerically tame. b must be nonzero.
std::vector<double> poly_rem(std::vector<double> a, const std::vector<double>& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const double q = a.back() / b.back();
    const int shift = static_cast<int>(a.size()) - 1 - db;
    for (int i = 0; i <= db; ++i) a[i + shift] -= q * b[i];
    a.pop_back();
  }
  return a;
}

void normalize(std::vector<double>& c) {
  double mx = 0.0;
  for (double v : c) mx = std::max(mx, std::abs(v));
  if (mx > 0.0) {
    for (double& v : c) v /= mx;
  }
  // strip a numerically dead leading coefficient
  while (!c.empty() && std::abs(c.back()) < 1e-14) c.pop_back();
}

int sign_changes(const std::vector<std::vector<double>>& chain, double t) {
  int changes = 0, last = 0;
  for (const auto& c : chain) {
    double v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * t + c[i];
    const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s != 0) {
      if (last != 0 && s != last) ++changes;
      last = s;
    }
  }
  return changes;
}

}  // namespace

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

bool Polynomial::is_zero(double tol) const {
  return std::all_of(c_.begin(), c_.end(),
                     [&](double v) { return std::abs(v) <= tol; });
}

double Polynomial::operator()(double t) const {
  double v = 0.0;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) v = v * t + c_[i];
  return v;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

std::vector<double> real_roots(const Polynomial& p, double refine) {
  std::vector<double> coeffs = p.coeffs();
  normalize(coeffs);
  if (coeffs.size() <= 1) return {};  // constant (or dead) polynomial
  if (coeffs.size() == 2) return {-coeffs[0] / coeffs[1]};

  // Sturm chain
  std::vector<std::vector<double>> chain;
  chain.push_back(coeffs);
  {
    std::vector<double> d(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      d[i - 1] = coeffs[i] * static_cast<double>(i);
    normalize(d);
    chain.push_back(d);
  }
  while (chain.back().size() > 1) {
    std::vector<double> r = poly_rem(chain[chain.size() - 2], chain.back());
    normalize(r);
    if (r.empty()) break;
    for (double& v : r) v = -v;
    chain.push_back(std::move(r));
  }

  // Cauchy bound on root magnitudes
  double bound = 0.0;
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
    bound = std::max(bound, std::abs(coeffs[i] / coeffs.back()));
  bound += 1.0;

  std::vector<double> roots;
  struct Interval { double a, b; int count; };
  const double lo = -bound, hi = bound;
  std::vector<Interval> work{{lo, hi, sign_changes(chain, lo) - sign_changes(chain, hi)}};
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    if (iv.count <= 0) continue;
    if (iv.b - iv.a <= refine) {
      roots.push_back(0.5 * (iv.a + iv.b));
      continue;
    }
    const double mid = 0.5 * (iv.a + iv.b);
    const int cm = sign_changes(chain, mid);
    const int left = sign_changes(chain, iv.a) - cm;
    work.push_back({iv.a, mid, left});
    work.push_back({mid, iv.b, iv.count - left});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace cpt
