#pragma once

#include <span>
#include <string>
#include <vector>

#include "holoconv/common.hpp"

namespace holoconv {

enum class DiskFnKind { Identity, ExpType, KoebeOrder, PowerSeries };

// Normalized analytic function on the unit disk (g(0) = 0, g'(0) = 1) with
// closed-form first and second derivatives.
//
// Built-ins:
//   identity           g(xi) = xi
//   exp_type(lambda)   g(xi) = (e^(lambda xi) - 1) / lambda
//   koebe_order(alpha) g(xi) = (1 - (1-xi)^(2a-1)) / (2a-1), and the exact
//                      logarithmic branch -ln(1-xi) at alpha = 1/2
//   power_series(a2..) g(xi) = xi + sum_k a_k xi^k
class DiskFunction {
 public:
  static DiskFunction identity();
  static DiskFunction exp_type(cplx lambda);
  static DiskFunction koebe_order(double alpha);
  static DiskFunction power_series(std::vector<cplx> coeffs);

  cplx value(cplx xi) const;
  cplx deriv(cplx xi) const;
  cplx deriv2(cplx xi) const;

  DiskFnKind kind() const { return kind_; }
  cplx lambda() const { return lambda_; }
  double order() const { return alpha_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::string json_name() const;

 private:
  DiskFnKind kind_ = DiskFnKind::Identity;
  cplx lambda_{};
  double alpha_ = 0.0;
  std::vector<cplx> coeffs_;  // a2..aK
};

// Re{1 + xi g''(xi)/g'(xi)}; membership in K(alpha) means > alpha on the disk.
double convex_order_margin_1d(const DiskFunction& g, cplx xi);

// |g''(xi)/g'(xi)|; membership in SK(U, alpha) means <= 1 - alpha on the disk.
double sk_margin_1d(const DiskFunction& g, cplx xi);

struct CoeffTest1D {
  bool holds = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

// sum_k k(k - alpha)|a_k| <= 1 - alpha  (convexity of order alpha)
CoeffTest1D coeff_test_convex_1d(std::span<const cplx> a2_onward, double alpha);

// sum_k (k - alpha)|a_k| <= 1 - alpha   (starlikeness of order alpha)
CoeffTest1D coeff_test_starlike_1d(std::span<const cplx> a2_onward, double alpha);

}  // namespace holoconv
