#include "holoconv/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "holoconv/criteria.hpp"
#include "holoconv/parallel.hpp"

namespace holoconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kRefineCandidates = 8;

// Rescaling can overshoot by an ulp; nudge back until ||z|| <= cap holds.
void clamp_radius(CVector& z, double cap) {
  double nz = z.norm();
  if (nz <= cap) return;
  z *= cap / nz;
  while ((nz = z.norm()) > cap) z *= 1.0 - 4e-16;
}

CVector sample_ball_point(int n, Rng& rng, double cap) {
  CVector z(n);
  double nz;
  do {
    for (int j = 0; j < n; ++j) z(j) = rng.cgaussian();
    nz = z.norm();
  } while (nz == 0.0);
  // radius law u^(1/(2n)) concentrates mass near the boundary, where the
  // violations of both sharp families live
  const double r = std::min(std::pow(rng.uniform01_pos(), 1.0 / (2.0 * n)), cap);
  z *= r / nz;
  clamp_radius(z, cap);
  return z;
}

}  // namespace

std::pair<CVector, CVector> sample_admissible(int n, Rng& rng, double radius_cap) {
  if (n < 1) throw std::invalid_argument("sample_admissible: n >= 1");
  const CVector z = sample_ball_point(n, rng, radius_cap);
  const double nz2 = z.squaredNorm();
  CVector x(n);
  for (;;) {
    for (int j = 0; j < n; ++j) x(j) = rng.cgaussian();
    const double t = std::real(inner(x, z)) / nz2;
    x -= t * z;
    const double nx = x.norm();
    if (nx > 1e-8) {
      x /= nx;
      return {z, x};
    }
    // x was real-parallel to z; resample
  }
}

namespace {

double margin_or_inf(const Mapping& f, const CVector& z, const CVector& x) {
  try {
    return convexity_margin(f, z, x);
  } catch (const NotLocallyBiholomorphic&) {
    return kInf;
  }
}

// Pull x back onto the constraint set {Re<x,z> = 0, ||x|| = 1} and keep z
// inside the radius cap. Returns false when the pair degenerates.
bool project_pair(CVector& z, CVector& x, double radius_cap) {
  double nz = z.norm();
  if (!(nz > 1e-8)) return false;
  if (nz > radius_cap) {
    clamp_radius(z, radius_cap);
    nz = z.norm();
  }
  const double t = std::real(inner(x, z)) / (nz * nz);
  x -= t * z;
  const double nx = x.norm();
  if (!(nx > 1e-10)) return false;
  x /= nx;
  return true;
}

struct RefineResult {
  CVector z;
  CVector x;
  double margin = kInf;
};

// Projected descent of the margin over the 4n real coordinates of (z, x),
// numerical gradient with per-probe re-projection, step halving on failure.
// The margin is non-increasing along accepted steps.
RefineResult refine_pair(const Mapping& f, CVector z, CVector x,
                         const SearchConfig& cfg) {
  const int n = static_cast<int>(z.size());
  if (!project_pair(z, x, cfg.radius_cap)) return {z, x, kInf};
  double m = margin_or_inf(f, z, x);
  if (m == kInf) return {z, x, kInf};

  const double fd = 1e-6;
  auto probe = [&](const CVector& zz, const CVector& xx, int coord,
                   double delta) -> double {
    CVector zp = zz, xp = xx;
    const int j = coord % n;
    const cplx bump = (coord / n) % 2 == 0 ? cplx(delta, 0.0) : cplx(0.0, delta);
    if (coord < 2 * n)
      zp(j) += bump;
    else
      xp(j) += bump;
    if (!project_pair(zp, xp, cfg.radius_cap)) return kInf;
    return margin_or_inf(f, zp, xp);
  };

  double step = 0.02;
  for (int it = 0; it < cfg.refine_steps && step > 1e-12; ++it) {
    std::vector<double> grad(static_cast<std::size_t>(4 * n));
    double gn2 = 0.0;
    for (int c = 0; c < 4 * n; ++c) {
      double mp = probe(z, x, c, fd);
      double mm = probe(z, x, c, -fd);
      if (mp == kInf) mp = m;
      if (mm == kInf) mm = m;
      grad[static_cast<std::size_t>(c)] = (mp - mm) / (2.0 * fd);
      gn2 += grad[static_cast<std::size_t>(c)] * grad[static_cast<std::size_t>(c)];
    }
    const double gn = std::sqrt(gn2);
    if (!(gn > 0.0)) break;

    bool accepted = false;
    while (step > 1e-12) {
      CVector zc = z, xc = x;
      for (int c = 0; c < 4 * n; ++c) {
        const int j = c % n;
        const double d = -step * grad[static_cast<std::size_t>(c)] / gn;
        const cplx bump = (c / n) % 2 == 0 ? cplx(d, 0.0) : cplx(0.0, d);
        if (c < 2 * n)
          zc(j) += bump;
        else
          xc(j) += bump;
      }
      if (project_pair(zc, xc, cfg.radius_cap)) {
        const double mc = margin_or_inf(f, zc, xc);
        if (mc < m) {
          z = std::move(zc);
          x = std::move(xc);
          m = mc;
          step = std::min(step * 1.5, 0.05);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {std::move(z), std::move(x), m};
}

bool lex_less(const RefineResult& a, const RefineResult& b) {
  if (a.margin != b.margin) return a.margin < b.margin;
  for (int i = 0; i < a.z.size(); ++i) {
    if (a.z(i).real() != b.z(i).real()) return a.z(i).real() < b.z(i).real();
    if (a.z(i).imag() != b.z(i).imag()) return a.z(i).imag() < b.z(i).imag();
  }
  for (int i = 0; i < a.x.size(); ++i) {
    if (a.x(i).real() != b.x(i).real()) return a.x(i).real() < b.x(i).real();
    if (a.x(i).imag() != b.x(i).imag()) return a.x(i).imag() < b.x(i).imag();
  }
  return false;
}

Witness make_witness(const Mapping& f, RefineResult best, double alpha,
                     std::string path) {
  Witness w;
  w.margin = best.margin;
  w.alpha = alpha;
  w.path = std::move(path);
  // Re-validate through the generic dense-solve derivative path.
  try {
    const double mg =
        convexity_margin(f, best.z, best.x, MarginPath::Generic);
    w.validated = std::abs(mg - best.margin) <= 1e-8 * std::max(1.0, std::abs(best.margin));
  } catch (const NotLocallyBiholomorphic&) {
    w.validated = false;
  }
  w.z = std::move(best.z);
  w.x = std::move(best.x);
  return w;
}

}  // namespace

SearchOutcome find_witness(const Mapping& f, OrderParam alpha,
                           const SearchConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("find_witness: samples >= 1");
  if (!(cfg.radius_cap > 0.0 && cfg.radius_cap < 1.0))
    throw std::invalid_argument("find_witness: 0 < radius_cap < 1");
  const int n = dim(f);

  std::vector<double> margins(cfg.samples);
  for_each_index(cfg.samples, cfg.exec, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, i));
    auto [z, x] = sample_admissible(n, rng, cfg.radius_cap);
    margins[i] = margin_or_inf(f, z, x);
  });

  SearchOutcome out;
  out.evaluated = cfg.samples;
  std::vector<std::size_t> finite;
  finite.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    if (margins[i] == kInf)
      ++out.singular_points;
    else
      finite.push_back(i);
  }
  out.best_margin = kInf;
  if (finite.empty()) return out;

  const std::size_t n_cand = std::min(kRefineCandidates, finite.size());
  std::partial_sort(finite.begin(), finite.begin() + n_cand, finite.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (margins[a] != margins[b]) return margins[a] < margins[b];
                      return a < b;
                    });

  std::vector<RefineResult> refined(n_cand);
  for_each_index(n_cand, cfg.exec, [&](std::size_t c) {
    Rng rng(derive_seed(cfg.seed, finite[c]));
    auto [z, x] = sample_admissible(n, rng, cfg.radius_cap);
    refined[c] = refine_pair(f, std::move(z), std::move(x), cfg);
  });

  std::size_t best = 0;
  for (std::size_t c = 1; c < n_cand; ++c)
    if (lex_less(refined[c], refined[best])) best = c;
  out.best_margin = refined[best].margin;

  if (out.best_margin < alpha.alpha - cfg.tol)
    out.witness = make_witness(f, std::move(refined[best]), alpha.alpha, "sampled");
  return out;
}

SearchOutcome seeded_witness(const Mapping& f, OrderParam alpha,
                             const CVector& z, const CVector& x,
                             const SearchConfig& cfg) {
  const int n = dim(f);
  if (z.size() != n || x.size() != n)
    throw DimensionMismatch("seeded_witness: seed dimension");
  const double nz = norm_of(z);
  const double nx = norm_of(x);
  if (!(nz > 0.0 && nz <= cfg.radius_cap && nx > 0.0))
    throw std::invalid_argument("seeded_witness: inadmissible seed point");
  if (std::abs(std::real(inner(x, z))) > kTangencyTol * nx * nz)
    throw TangencyViolation("seeded_witness: seed violates Re<x,z> = 0");

  SearchOutcome out;
  out.evaluated = 1;
  const CVector xn = x / nx;
  const double m = margin_or_inf(f, z, xn);
  if (m == kInf) {
    out.singular_points = 1;
    out.best_margin = kInf;
    return out;
  }
  if (m < alpha.alpha - cfg.tol) {
    // The seed itself certifies the violation; report it unmoved.
    out.best_margin = m;
    out.witness = make_witness(f, {z, xn, m}, alpha.alpha, "seeded");
    return out;
  }
  RefineResult r = refine_pair(f, z, xn, cfg);
  out.best_margin = r.margin;
  if (r.margin < alpha.alpha - cfg.tol)
    out.witness = make_witness(f, std::move(r), alpha.alpha, "seeded");
  return out;
}

namespace {

double starlike_margin_or_inf(const Mapping& f, const CVector& z, OrderParam a) {
  try {
    return starlike_margin(f, z, a);
  } catch (const NotLocallyBiholomorphic&) {
    return kInf;
  }
}

struct StarlikeRefineResult {
  CVector z;
  double margin = kInf;
};

StarlikeRefineResult refine_point(const Mapping& f, OrderParam alpha, CVector z,
                                  const SearchConfig& cfg) {
  const int n = static_cast<int>(z.size());
  double m = starlike_margin_or_inf(f, z, alpha);
  if (m == kInf) return {z, kInf};
  const double fd = 1e-6;
  auto project = [&](CVector& zz) -> bool {
    const double nz = zz.norm();
    if (!(nz > 1e-8)) return false;
    if (nz > cfg.radius_cap) zz *= cfg.radius_cap / nz;
    return true;
  };
  double step = 0.02;
  for (int it = 0; it < cfg.refine_steps && step > 1e-12; ++it) {
    std::vector<double> grad(static_cast<std::size_t>(2 * n));
    double gn2 = 0.0;
    for (int c = 0; c < 2 * n; ++c) {
      const int j = c % n;
      const cplx bump = c < n ? cplx(fd, 0.0) : cplx(0.0, fd);
      CVector zp = z, zm = z;
      zp(j) += bump;
      zm(j) -= bump;
      double mp = project(zp) ? starlike_margin_or_inf(f, zp, alpha) : kInf;
      double mm = project(zm) ? starlike_margin_or_inf(f, zm, alpha) : kInf;
      if (mp == kInf) mp = m;
      if (mm == kInf) mm = m;
      grad[static_cast<std::size_t>(c)] = (mp - mm) / (2.0 * fd);
      gn2 += grad[static_cast<std::size_t>(c)] * grad[static_cast<std::size_t>(c)];
    }
    const double gn = std::sqrt(gn2);
    if (!(gn > 0.0)) break;
    bool accepted = false;
    while (step > 1e-12) {
      CVector zc = z;
      for (int c = 0; c < 2 * n; ++c) {
        const int j = c % n;
        const double d = -step * grad[static_cast<std::size_t>(c)] / gn;
        zc(j) += c < n ? cplx(d, 0.0) : cplx(0.0, d);
      }
      if (project(zc)) {
        const double mc = starlike_margin_or_inf(f, zc, alpha);
        if (mc < m) {
          z = std::move(zc);
          m = mc;
          step = std::min(step * 1.5, 0.05);
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {std::move(z), m};
}

}  // namespace

StarlikeSearchOutcome find_starlike_witness(const Mapping& f, OrderParam alpha,
                                            const SearchConfig& cfg) {
  if (cfg.samples < 1)
    throw std::invalid_argument("find_starlike_witness: samples >= 1");
  const int n = dim(f);

  std::vector<double> margins(cfg.samples);
  for_each_index(cfg.samples, cfg.exec, [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, i));
    const CVector z = sample_ball_point(n, rng, cfg.radius_cap);
    margins[i] = starlike_margin_or_inf(f, z, alpha);
  });

  StarlikeSearchOutcome out;
  out.evaluated = cfg.samples;
  std::vector<std::size_t> finite;
  finite.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    if (margins[i] == kInf)
      ++out.singular_points;
    else
      finite.push_back(i);
  }
  out.best_margin = kInf;
  if (finite.empty()) return out;

  const std::size_t n_cand = std::min(kRefineCandidates, finite.size());
  std::partial_sort(finite.begin(), finite.begin() + n_cand, finite.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (margins[a] != margins[b]) return margins[a] < margins[b];
                      return a < b;
                    });
  std::vector<StarlikeRefineResult> refined(n_cand);
  for_each_index(n_cand, cfg.exec, [&](std::size_t c) {
    Rng rng(derive_seed(cfg.seed, finite[c]));
    refined[c] = refine_point(f, alpha, sample_ball_point(n, rng, cfg.radius_cap), cfg);
  });

  std::size_t best = 0;
  for (std::size_t c = 1; c < n_cand; ++c) {
    if (refined[c].margin < refined[best].margin) best = c;
  }
  out.best_margin = refined[best].margin;
  if (out.best_margin < -cfg.tol)
    out.witness =
        StarlikeWitness{std::move(refined[best].z), refined[best].margin, alpha.alpha};
  return out;
}

}  // namespace holoconv
