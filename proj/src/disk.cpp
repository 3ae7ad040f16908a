#include "holoconv/disk.hpp"

#include <cmath>

namespace holoconv {

namespace {

void check_disk(cplx xi) {
  if (!(std::abs(xi) < 1.0))
    throw std::domain_error("disk function evaluated outside the open disk");
}

// principal branch of (1 - xi)^p; 1 - xi has positive real part on the disk,
// so this stays away from the cut
cplx one_minus_pow(cplx xi, double p) { return std::exp(p * std::log(1.0 - xi)); }

// exp(w) - 1 without cancellation for small |w|
cplx cexpm1(cplx w) {
  const double ea = std::exp(w.real());
  const double s = std::sin(0.5 * w.imag());
  return {std::expm1(w.real()) - 2.0 * ea * s * s, ea * std::sin(w.imag())};
}

}  // namespace

DiskFunction DiskFunction::identity() { return DiskFunction{}; }

DiskFunction DiskFunction::exp_type(cplx lambda) {
  if (lambda == cplx(0.0)) return identity();  // limiting case
  DiskFunction g;
  g.kind_ = DiskFnKind::ExpType;
  g.lambda_ = lambda;
  return g;
}

DiskFunction DiskFunction::koebe_order(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("koebe_order: alpha must lie in [0, 1)");
  DiskFunction g;
  g.kind_ = DiskFnKind::KoebeOrder;
  g.alpha_ = alpha;
  return g;
}

DiskFunction DiskFunction::power_series(std::vector<cplx> coeffs) {
  for (const cplx& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("power_series: coefficients must be finite");
  DiskFunction g;
  g.kind_ = DiskFnKind::PowerSeries;
  g.coeffs_ = std::move(coeffs);
  return g;
}

cplx DiskFunction::value(cplx xi) const {
  check_disk(xi);
  switch (kind_) {
    case DiskFnKind::Identity:
      return xi;
    case DiskFnKind::ExpType:
      return cexpm1(lambda_ * xi) / lambda_;
    case DiskFnKind::KoebeOrder:
      if (alpha_ == 0.5) return -std::log(1.0 - xi);
      // 1 - (1-xi)^(2a-1) cancels badly when 2a-1 is small
      return -cexpm1((2.0 * alpha_ - 1.0) * std::log(1.0 - xi)) /
             (2.0 * alpha_ - 1.0);
    case DiskFnKind::PowerSeries: {
      // xi + a2 xi^2 + ... = xi + xi * (a2 xi + a3 xi^2 + ...), Horner inner sum
      cplx acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = (*it + acc) * xi;
      return xi + acc * xi;
    }
  }
  return xi;
}

cplx DiskFunction::deriv(cplx xi) const {
  check_disk(xi);
  switch (kind_) {
    case DiskFnKind::Identity:
      return 1.0;
    case DiskFnKind::ExpType:
      return std::exp(lambda_ * xi);
    case DiskFnKind::KoebeOrder:
      return one_minus_pow(xi, 2.0 * alpha_ - 2.0);
    case DiskFnKind::PowerSeries: {
      cplx acc = 0.0;
      int k = static_cast<int>(coeffs_.size()) + 1;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it, --k)
        acc = acc * xi + static_cast<double>(k) * (*it);
      return 1.0 + acc * xi;
    }
  }
  return 1.0;
}

cplx DiskFunction::deriv2(cplx xi) const {
  check_disk(xi);
  switch (kind_) {
    case DiskFnKind::Identity:
      return 0.0;
    case DiskFnKind::ExpType:
      return lambda_ * std::exp(lambda_ * xi);
    case DiskFnKind::KoebeOrder:
      return (2.0 - 2.0 * alpha_) * one_minus_pow(xi, 2.0 * alpha_ - 3.0);
    case DiskFnKind::PowerSeries: {
      cplx acc = 0.0;
      int k = static_cast<int>(coeffs_.size()) + 1;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it, --k)
        acc = acc * xi + static_cast<double>(k * (k - 1)) * (*it);
      return acc;
    }
  }
  return 0.0;
}

std::string DiskFunction::json_name() const {
  switch (kind_) {
    case DiskFnKind::Identity:
      return "identity";
    case DiskFnKind::ExpType:
      return "exp_type";
    case DiskFnKind::KoebeOrder:
      return "koebe_order";
    case DiskFnKind::PowerSeries:
      return "power_series";
  }
  return "identity";
}

namespace {

cplx ratio_d2_d1(const DiskFunction& g, cplx xi) {
  const cplx d1 = g.deriv(xi);
  if (std::abs(d1) < 1e-12)
    throw NotLocallyBiholomorphic("disk function derivative vanishes");
  return g.deriv2(xi) / d1;
}

}  // namespace

double convex_order_margin_1d(const DiskFunction& g, cplx xi) {
  return 1.0 + std::real(xi * ratio_d2_d1(g, xi));
}

double sk_margin_1d(const DiskFunction& g, cplx xi) {
  return std::abs(ratio_d2_d1(g, xi));
}

namespace {

CoeffTest1D coeff_sum(std::span<const cplx> a, double alpha, bool convex) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("coefficient test: alpha must lie in [0, 1)");
  CoeffTest1D t;
  double k = 2.0;
  for (const cplx& c : a) {
    const double w = convex ? k * (k - alpha) : (k - alpha);
    t.lhs += w * std::abs(c);
    k += 1.0;
  }
  t.rhs = 1.0 - alpha;
  t.slack = t.rhs - t.lhs;
  t.holds = t.lhs <= t.rhs;
  return t;
}

}  // namespace

CoeffTest1D coeff_test_convex_1d(std::span<const cplx> a, double alpha) {
  return coeff_sum(a, alpha, true);
}

CoeffTest1D coeff_test_starlike_1d(std::span<const cplx> a, double alpha) {
  return coeff_sum(a, alpha, false);
}

}  // namespace holoconv
