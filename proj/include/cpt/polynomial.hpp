#pragma once

#include <vector>

namespace cpt {

/// Real univariate polynomial, coefficients low degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero(double tol = 0.0) const;
  const std::vector<double>& coeffs() const { return c_; }

  double operator()(double t) const;
  Polynomial derivative() const;

 private:
  void trim();
  std::vector<double> c_;
};

/// All real roots, isolated with a Sturm sequence and refined by bisection
/// to the requested width. Roots are returned sorted ascending; multiple
/// roots are reported once.
std::vector<double> real_roots(const Polynomial& p, double refine = 1e-13);

}  // namespace cpt
