#include "holoconv/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "holoconv/parallel.hpp"
#include "holoconv/rng.hpp"

namespace holoconv {

namespace {

constexpr int kMaxArity = 6;
constexpr int kMaxDim = 16;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void check_shape(int k, int n) {
  if (k < 2 || k > kMaxArity)
    throw std::invalid_argument("tensor arity must lie in [2, 6]");
  if (n < 1 || n > kMaxDim)
    throw std::invalid_argument("tensor dimension must lie in [1, 16]");
}

// Contract the last input index of buf (viewed as rows x n^order) with v,
// compacting in place to rows x n^(order-1).
void contract_last(std::vector<cplx>& buf, std::size_t rows, std::size_t& cols,
                   int n, const CVector& v) {
  const std::size_t out_cols = cols / static_cast<std::size_t>(n);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t b = 0; b < out_cols; ++b) {
      const cplx* src = &buf[r * cols + b * static_cast<std::size_t>(n)];
      cplx s = 0.0;
      for (int j = 0; j < n; ++j) s += src[j] * v(j);
      buf[r * out_cols + b] = s;
    }
  }
  cols = out_cols;
}

}  // namespace

SymTensor SymTensor::dense(int k, int n, std::vector<cplx> coeffs) {
  check_shape(k, n);
  const std::size_t np = ipow(static_cast<std::size_t>(n), k);
  if (coeffs.size() != np * static_cast<std::size_t>(n))
    throw std::invalid_argument("tensor coefficient array has wrong size");
  for (const cplx& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("tensor coefficients must be finite");

  // Symmetrize over the input indices: average each permutation orbit.
  // canon[J] is the linear index of the sorted multi-index of J.
  std::vector<std::size_t> canon(np);
  std::vector<double> orbit(np, 0.0);
  {
    std::vector<int> digits(k);
    for (std::size_t J = 0; J < np; ++J) {
      std::size_t t = J;
      for (int d = k - 1; d >= 0; --d) {
        digits[d] = static_cast<int>(t % n);
        t /= n;
      }
      std::sort(digits.begin(), digits.end());
      std::size_t c = 0;
      for (int d = 0; d < k; ++d) c = c * n + static_cast<std::size_t>(digits[d]);
      canon[J] = c;
      orbit[c] += 1.0;
    }
  }
  // Keep orbits whose members are already exactly equal untouched, so that
  // symmetrization is idempotent at the bit level (round-trip stability).
  std::vector<cplx> acc(np);
  std::vector<cplx> first(np);
  std::vector<unsigned char> seen(np), equal(np);
  for (int i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), cplx(0.0));
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(equal.begin(), equal.end(), 1);
    const std::size_t base = static_cast<std::size_t>(i) * np;
    for (std::size_t J = 0; J < np; ++J) {
      const cplx v = coeffs[base + J];
      const std::size_t c = canon[J];
      acc[c] += v;
      if (!seen[c]) {
        seen[c] = 1;
        first[c] = v;
      } else if (v != first[c]) {
        equal[c] = 0;
      }
    }
    for (std::size_t J = 0; J < np; ++J) {
      const std::size_t c = canon[J];
      coeffs[base + J] = equal[c] ? first[c] : acc[c] / orbit[c];
    }
  }

  SymTensor A;
  A.k_ = k;
  A.n_ = n;
  A.np_ = np;
  A.c_ = std::move(coeffs);
  return A;
}

SymTensor SymTensor::rank_one(int k, cplx a, CVector u) {
  check_shape(k, static_cast<int>(u.size()));
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !u.allFinite())
    throw std::invalid_argument("rank-one tensor parameters must be finite");
  SymTensor A;
  A.k_ = k;
  A.n_ = static_cast<int>(u.size());
  A.np_ = ipow(static_cast<std::size_t>(A.n_), k);
  A.rank_one_ = true;
  A.a_ = a;
  A.u_ = std::move(u);
  return A;
}

cplx SymTensor::coeff_a() const {
  if (!rank_one_) throw std::logic_error("coeff_a: tensor is dense");
  return a_;
}

const CVector& SymTensor::direction() const {
  if (!rank_one_) throw std::logic_error("direction: tensor is dense");
  return u_;
}

const std::vector<cplx>& SymTensor::coeffs() const {
  if (rank_one_) throw std::logic_error("coeffs: tensor is rank-one");
  return c_;
}

CVector SymTensor::eval(const std::vector<CVector>& args) const {
  if (static_cast<int>(args.size()) != k_)
    throw DimensionMismatch("eval: expected " + std::to_string(k_) +
                            " arguments");
  for (const CVector& v : args)
    if (v.size() != n_) throw DimensionMismatch("eval: argument dimension");

  if (rank_one_) {
    cplx p = a_;
    for (const CVector& v : args) p *= inner(v, u_);
    return p * u_;
  }
  std::vector<cplx> buf = c_;
  std::size_t cols = np_;
  // Symmetric, so slot order is immaterial; contract back to front.
  for (int t = k_ - 1; t >= 0; --t)
    contract_last(buf, static_cast<std::size_t>(n_), cols, n_, args[t]);
  CVector out(n_);
  for (int i = 0; i < n_; ++i) out(i) = buf[static_cast<std::size_t>(i)];
  return out;
}

CVector SymTensor::eval_diag(const CVector& z) const {
  return eval_mixed(z, k_, z, 0);
}

CVector SymTensor::eval_mixed(const CVector& z, int z_count, const CVector& x,
                              int x_count) const {
  if (z_count + x_count != k_ || z_count < 0 || x_count < 0)
    throw DimensionMismatch("eval_mixed: slot counts must sum to the arity");
  if (z.size() != n_ || x.size() != n_)
    throw DimensionMismatch("eval_mixed: argument dimension");

  if (rank_one_) {
    cplx p = a_;
    const cplx zi = inner(z, u_);
    const cplx xi = inner(x, u_);
    for (int t = 0; t < z_count; ++t) p *= zi;
    for (int t = 0; t < x_count; ++t) p *= xi;
    return p * u_;
  }
  std::vector<cplx> buf = c_;
  std::size_t cols = np_;
  for (int t = 0; t < x_count; ++t)
    contract_last(buf, static_cast<std::size_t>(n_), cols, n_, x);
  for (int t = 0; t < z_count; ++t)
    contract_last(buf, static_cast<std::size_t>(n_), cols, n_, z);
  CVector out(n_);
  for (int i = 0; i < n_; ++i) out(i) = buf[static_cast<std::size_t>(i)];
  return out;
}

CMatrix SymTensor::contract_all_but_one(const CVector& z) const {
  if (z.size() != n_) throw DimensionMismatch("contract_all_but_one: dimension");
  if (rank_one_) {
    cplx p = a_;
    const cplx zi = inner(z, u_);
    for (int t = 0; t < k_ - 1; ++t) p *= zi;
    return p * (u_ * u_.adjoint());
  }
  std::vector<cplx> buf = c_;
  std::size_t cols = np_;
  for (int t = 0; t < k_ - 1; ++t)
    contract_last(buf, static_cast<std::size_t>(n_), cols, n_, z);
  CMatrix M(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      M(i, j) = buf[static_cast<std::size_t>(i) * cols +
                    static_cast<std::size_t>(j)];
  return M;
}

SymTensor SymTensor::scaled(cplx c) const {
  SymTensor A = *this;
  if (rank_one_) {
    A.a_ *= c;
  } else {
    for (cplx& v : A.c_) v *= c;
  }
  return A;
}

namespace {

struct AscentResult {
  double value = 0.0;
  bool stationary = false;
};

// Projected gradient ascent of F(x) = ||A(x^k)|| on the unit sphere.
AscentResult ascend(const SymTensor& A, CVector x, int max_iters, double tol) {
  const double k = static_cast<double>(A.arity());
  double F = norm_of(A.eval_diag(x));
  AscentResult res{F, false};
  double step = 0.25;
  for (int it = 0; it < max_iters; ++it) {
    const CMatrix B = A.contract_all_but_one(x);  // A(x^(k-1), .)
    const CVector w = B * x;                      // A(x^k)
    // Wirtinger gradient of F^2, projected onto the sphere tangent.
    CVector g = 2.0 * k * (B.adjoint() * w);
    g -= std::real(inner(g, x)) * x;
    const double gn = g.norm();
    if (gn <= tol * std::max(1.0, F * F)) {
      res.stationary = true;
      break;
    }
    bool accepted = false;
    while (step >= 1e-14) {
      CVector xc = x + (step / gn) * g;
      xc.normalize();
      const double Fc = norm_of(A.eval_diag(xc));
      if (Fc > F) {
        x = xc;
        F = Fc;
        res.value = std::max(res.value, Fc);
        step = std::min(step * 1.6, 1.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No ascent direction at any step length: numerically stationary.
      res.stationary = true;
      break;
    }
  }
  return res;
}

}  // namespace

NormEstimate SymTensor::op_norm(const NormConfig& cfg) const {
  if (rank_one_) {
    // sup ||a <x,u>^k u|| over ||x||=1 is attained at x = u/||u||.
    const double nu = norm_of(u_);
    double p = std::abs(a_);
    for (int t = 0; t < k_ + 1; ++t) p *= nu;
    return {p, true};
  }
  if (cfg.restarts < 1) throw std::invalid_argument("op_norm: restarts >= 1");

  // Pre-scan candidate starts: the basis directions plus random unit
  // vectors, keep the best cfg.restarts of them.
  const int n_random = std::max(4 * cfg.restarts, 64);
  std::vector<CVector> starts;
  starts.reserve(static_cast<std::size_t>(n_) + n_random);
  for (int j = 0; j < n_; ++j) {
    CVector e = CVector::Zero(n_);
    e(j) = 1.0;
    starts.push_back(std::move(e));
  }
  Rng rng(derive_seed(cfg.seed, 0));
  for (int t = 0; t < n_random; ++t) {
    CVector v(n_);
    for (int j = 0; j < n_; ++j) v(j) = rng.cgaussian();
    const double nv = v.norm();
    if (nv == 0.0) {
      --t;
      continue;
    }
    starts.push_back(v / nv);
  }
  std::vector<double> scan(starts.size());
  for (std::size_t s = 0; s < starts.size(); ++s)
    scan[s] = norm_of(eval_diag(starts[s]));
  std::vector<std::size_t> order(starts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scan[a] > scan[b]; });

  const std::size_t n_runs =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.restarts), order.size());
  std::vector<AscentResult> results(n_runs);
  for_each_index(n_runs, cfg.exec, [&](std::size_t r) {
    results[r] = ascend(*this, starts[order[r]], cfg.max_iters, cfg.tol);
  });

  NormEstimate est;
  est.value = *std::max_element(scan.begin(), scan.end());
  est.converged = false;
  for (const AscentResult& r : results) {
    est.value = std::max(est.value, r.value);
    est.converged = est.converged || r.stationary;
  }
  return est;
}

}  // namespace holoconv
