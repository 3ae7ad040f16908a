#pragma once

#include <map>
#include <string>
#include <vector>

#include "holoconv/mappings.hpp"

namespace holoconv {

// Which derivative-inverse route a margin evaluation takes.
enum class MarginPath { Closed, Generic };

// Pointwise convexity margin M(z,x) = ||x||^2 - Re<Df(z)^-1 D^2f(z)(x,x), z>
// at an admissible pair (0 < ||z|| < 1, x != 0, Re<x,z> = 0). The mapping
// satisfies the order-alpha condition at (z,x) iff M(z,x) > alpha ||x||^2.
double convexity_margin(const Mapping& f, const CVector& z, const CVector& x,
                        MarginPath path = MarginPath::Closed);

// Starlikeness margin at z (0 < ||z|| < 1) with h = Df(z)^-1 f(z):
//   alpha  > 0:  ||z||^2/(2 alpha) - | <h,z> - ||z||^2/(2 alpha) |
//   alpha == 0:  Re<h,z>
// Positive value means the order-alpha starlikeness condition holds at z.
double starlike_margin(const Mapping& f, const CVector& z, OrderParam alpha);

struct TermNorm {
  int k = 0;
  double norm = 0.0;
  bool converged = true;
};

// Verdict of a coefficient or sampled certificate. Coefficient-sum norms are
// certified lower bounds, so a failing verdict is definitive while a holding
// verdict is up to estimator accuracy; `bias` records this in reports.
struct CertificateReport {
  std::string kind;
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::vector<TermNorm> terms;
  bool norms_converged = true;
  std::string bias;
  std::map<std::string, double> notes;
};

// sum_k k(k - alpha) ||A_k|| <= 1 - alpha  =>  f convex of order alpha.
CertificateReport coeff_certificate_convex(const PolynomialMapping& f,
                                           OrderParam alpha,
                                           const NormConfig& cfg = {});

// sum_k (k - alpha) ||A_k|| <= A(alpha)  =>  f starlike of order alpha.
CertificateReport coeff_certificate_starlike(const PolynomialMapping& f,
                                             OrderParam alpha,
                                             const NormConfig& cfg = {});

// Membership in the coefficient class { sum_k k(k - alpha) ||A_k|| <= A(alpha) },
// the convex-side class of the Alexander correspondence.
CertificateReport coeff_class_convex(const PolynomialMapping& f,
                                     OrderParam alpha,
                                     const NormConfig& cfg = {});

// The piecewise starlike coefficient bound A(alpha), breakpoints 1/4, 2/5, 1/2.
double starlike_coeff_bound(double alpha);

// Order of starlikeness beta(alpha) guaranteed for convex mappings of order
// alpha: the positive root of 2 b^2 - (2 alpha - 1) b - 1 = 0.
double starlike_order_of_convex(double alpha);

struct GrowthBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// ||z||/(1+||z||)^(2(1-beta)) <= ||f(z)|| <= ||z||/(1-||z||)^(2(1-beta))
GrowthBounds growth_bounds(double beta, double r);

// Radius of the ball guaranteed to be covered by f(B): 2^(-2(1-beta)).
double covering_radius(double beta);

struct GrowthRow {
  double norm_z = 0.0;
  double norm_fz = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct GrowthReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;  // min over samples of min(nf-lower, upper-nf)
  double beta = 0.0;
  std::vector<GrowthRow> rows;  // filled only when keep_rows is set
};

// Samples ||z|| <= 0.95 and checks the growth bounds with
// beta = starlike_order_of_convex(alpha). Violations are findings, not errors.
GrowthReport growth_check(const Mapping& f, OrderParam alpha,
                          const SearchConfig& cfg, bool keep_rows = false);

// Sampled certificate: sup ||Df(z) - I|| <= c < 1 over the ball and
// sup ||D^2 f(z)(x,x)|| <= (1-c)(1-alpha) over admissible pairs with ||x|| = 1
// imply convexity of order alpha. Sound only up to sampling.
CertificateReport near_identity_certificate(const Mapping& f, OrderParam alpha,
                                            double c, const SearchConfig& cfg);

}  // namespace holoconv
