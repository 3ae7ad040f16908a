#include "holoconv/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holoconv/parallel.hpp"
#include "holoconv/rng.hpp"
#include "holoconv/search.hpp"

namespace holoconv {

double convexity_margin(const Mapping& f, const CVector& z, const CVector& x,
                        MarginPath path) {
  const double nz = norm_of(z);
  const double nx = norm_of(x);
  if (!(nz > 0.0 && nz < 1.0))
    throw std::domain_error("convexity margin: need 0 < ||z|| < 1");
  if (!(nx > 0.0)) throw std::domain_error("convexity margin: x must be nonzero");
  if (std::abs(std::real(inner(x, z))) > kTangencyTol * nx * nz)
    throw TangencyViolation("convexity margin: Re<x,z> = 0 violated");
  const CVector w = d2frechet(f, z, x);
  const CVector v = path == MarginPath::Closed ? inv_df_apply(f, z, w)
                                               : inv_df_apply_generic(f, z, w);
  return nx * nx - std::real(inner(v, z));
}

double starlike_margin(const Mapping& f, const CVector& z, OrderParam alpha) {
  const double nz = norm_of(z);
  if (!(nz > 0.0 && nz < 1.0))
    throw std::domain_error("starlike margin: need 0 < ||z|| < 1");
  const CVector h = inv_df_apply(f, z, eval(f, z));
  const cplx p = inner(h, z);
  if (alpha.alpha == 0.0) return std::real(p);
  const double t = nz * nz / (2.0 * alpha.alpha);
  return t - std::abs(p - t);
}

namespace {

CertificateReport coeff_sum_certificate(const PolynomialMapping& f,
                                        OrderParam alpha, const NormConfig& cfg,
                                        bool convex_weights, double rhs,
                                        std::string kind) {
  CertificateReport rep;
  rep.kind = std::move(kind);
  rep.rhs = rhs;
  rep.bias = "term norms are certified lower bounds; a failing verdict is "
             "definitive, a holding one is up to estimator accuracy";
  for (const SymTensor& A : f.terms) {
    const NormEstimate est = A.op_norm(cfg);
    const double k = static_cast<double>(A.arity());
    const double w = convex_weights ? k * (k - alpha.alpha) : (k - alpha.alpha);
    rep.lhs += w * est.value;
    rep.terms.push_back({A.arity(), est.value, est.converged});
    rep.norms_converged = rep.norms_converged && est.converged;
  }
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

}  // namespace

CertificateReport coeff_certificate_convex(const PolynomialMapping& f,
                                           OrderParam alpha,
                                           const NormConfig& cfg) {
  return coeff_sum_certificate(f, alpha, cfg, true, 1.0 - alpha.alpha,
                               "coeff_convex");
}

CertificateReport coeff_certificate_starlike(const PolynomialMapping& f,
                                             OrderParam alpha,
                                             const NormConfig& cfg) {
  return coeff_sum_certificate(f, alpha, cfg, false,
                               starlike_coeff_bound(alpha.alpha),
                               "coeff_starlike");
}

CertificateReport coeff_class_convex(const PolynomialMapping& f,
                                     OrderParam alpha, const NormConfig& cfg) {
  return coeff_sum_certificate(f, alpha, cfg, true,
                               starlike_coeff_bound(alpha.alpha),
                               "coeff_convex_class");
}

double starlike_coeff_bound(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("starlike_coeff_bound: alpha must lie in [0, 1)");
  if (alpha <= 0.25)
    return (2.0 - alpha) * std::sqrt(1.0 - 2.0 * alpha) / std::sqrt(5.0 - 2.0 * alpha);
  if (alpha <= 0.4) return (2.0 - alpha) * (1.0 - alpha) / (2.0 + alpha);
  if (alpha < 0.5) return alpha;
  return 1.0 - alpha;
}

double starlike_order_of_convex(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("starlike_order_of_convex: alpha must lie in [0, 1)");
  const double t = 2.0 * alpha - 1.0;
  return (t + std::sqrt(t * t + 8.0)) / 4.0;
}

GrowthBounds growth_bounds(double beta, double r) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("growth_bounds: beta must lie in [0, 1)");
  if (!(r >= 0.0 && r < 1.0))
    throw std::invalid_argument("growth_bounds: r must lie in [0, 1)");
  const double e = 2.0 * (1.0 - beta);
  return {r / std::pow(1.0 + r, e), r / std::pow(1.0 - r, e)};
}

double covering_radius(double beta) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::invalid_argument("covering_radius: beta must lie in [0, 1)");
  return std::pow(2.0, -2.0 * (1.0 - beta));
}

GrowthReport growth_check(const Mapping& f, OrderParam alpha,
                          const SearchConfig& cfg, bool keep_rows) {
  if (cfg.samples < 1) throw std::invalid_argument("growth_check: samples >= 1");
  const int n = dim(f);
  const double beta = starlike_order_of_convex(alpha.alpha);
  const double cap = 0.95;

  GrowthReport rep;
  rep.samples = cfg.samples;
  rep.beta = beta;
  std::vector<GrowthRow> rows(cfg.samples);
  for_each_index(cfg.samples, cfg.exec, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, i));
    CVector z(n);
    double nz;
    do {
      for (int j = 0; j < n; ++j) z(j) = rng.cgaussian();
      nz = z.norm();
    } while (nz == 0.0);
    const double r =
        std::min(std::pow(rng.uniform01_pos(), 1.0 / (2.0 * n)), cap);
    z *= r / nz;
    GrowthRow row;
    row.norm_z = r;
    row.norm_fz = norm_of(eval(f, z));
    const GrowthBounds b = growth_bounds(beta, r);
    row.lower = b.lower;
    row.upper = b.upper;
    rows[i] = row;
  });

  rep.worst_slack = std::numeric_limits<double>::infinity();
  for (const GrowthRow& row : rows) {
    const double slack = std::min(row.norm_fz - row.lower, row.upper - row.norm_fz);
    rep.worst_slack = std::min(rep.worst_slack, slack);
    if (slack < -1e-12) ++rep.violations;
  }
  if (keep_rows) rep.rows = std::move(rows);
  return rep;
}

CertificateReport near_identity_certificate(const Mapping& f, OrderParam alpha,
                                            double c, const SearchConfig& cfg) {
  if (!(c >= 0.0 && c < 1.0))
    throw std::invalid_argument("near_identity_certificate: need 0 <= c < 1");
  if (cfg.samples < 1)
    throw std::invalid_argument("near_identity_certificate: samples >= 1");
  const int n = dim(f);

  std::vector<double> df_dev(cfg.samples);
  std::vector<double> d2_norm(cfg.samples);
  for_each_index(cfg.samples, cfg.exec, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, i));
    // ||Df(z) - I|| at a ball point
    CVector z(n);
    double nz;
    do {
      for (int j = 0; j < n; ++j) z(j) = rng.cgaussian();
      nz = z.norm();
    } while (nz == 0.0);
    const double r =
        std::min(std::pow(rng.uniform01_pos(), 1.0 / (2.0 * n)), cfg.radius_cap);
    z *= r / nz;
    df_dev[i] = op2norm(dfrechet(f, z) - CMatrix::Identity(n, n));
    // ||D^2 f(z)(x,x)|| at an admissible pair
    auto [za, xa] = sample_admissible(n, rng, cfg.radius_cap);
    d2_norm[i] = norm_of(d2frechet(f, za, xa));
  });

  double df_sup = 0.0, d2_sup = 0.0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    df_sup = std::max(df_sup, df_dev[i]);
    d2_sup = std::max(d2_sup, d2_norm[i]);
  }

  CertificateReport rep;
  rep.kind = "near_identity_sampled";
  rep.bias = "sampled certificate: sound only up to sampling";
  rep.lhs = d2_sup;
  rep.rhs = (1.0 - c) * (1.0 - alpha.alpha);
  rep.slack = rep.rhs - rep.lhs;
  rep.notes["c"] = c;
  rep.notes["df_minus_identity_sup"] = df_sup;
  rep.notes["d2_sup"] = d2_sup;
  rep.notes["samples"] = static_cast<double>(cfg.samples);
  rep.holds = df_sup <= c && d2_sup <= rep.rhs;
  return rep;
}

}  // namespace holoconv
