#include "holoconv/mappings.hpp"

#include <cmath>

namespace holoconv {

namespace {

void check_ball(const CVector& z) {
  if (!(z.norm() < 1.0))
    throw std::domain_error("mapping evaluated outside the open unit ball");
}

void check_dim(const Mapping& f, const CVector& v, const char* what) {
  if (v.size() != dim(f)) throw DimensionMismatch(what);
}

}  // namespace

PolynomialMapping::PolynomialMapping(int dim, std::vector<SymTensor> ts)
    : n(dim), terms(std::move(ts)) {
  if (n < 1 || n > 16)
    throw std::invalid_argument("polynomial mapping dimension must lie in [1, 16]");
  for (const SymTensor& A : terms)
    if (A.dim() != n)
      throw DimensionMismatch("polynomial mapping: term dimension mismatch");
}

RankOneQuadratic::RankOneQuadratic(cplx coeff, CVector dir)
    : a(coeff), u(std::move(dir)) {
  const double nu = u.norm();
  if (std::abs(nu - 1.0) > 1e-10)
    throw std::invalid_argument("rank-one quadratic: direction must be a unit vector");
  // polish to machine precision, but leave already-unit input untouched so
  // spec round-trips are bit-identical
  if (std::abs(nu - 1.0) > 4e-15) u /= nu;
}

PhiMapping::PhiMapping(CMatrix directions, std::vector<DiskFunction> fns)
    : u(std::move(directions)), g(std::move(fns)) {
  const int n = static_cast<int>(u.rows());
  const int m = static_cast<int>(u.cols());
  if (m < 2) throw std::invalid_argument("phi mapping needs at least two directions");
  if (m > n) throw std::invalid_argument("phi mapping: more directions than dimensions");
  if (static_cast<int>(g.size()) != m)
    throw std::invalid_argument("phi mapping: one disk function per direction");
  CMatrix gram = u.adjoint() * u;
  const double deviation = (gram - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
  if (deviation > 1e-10)
    throw std::invalid_argument("phi mapping: directions are not orthonormal");
  // Modified Gram-Schmidt polish so the stored columns are orthonormal to
  // machine precision; skipped for already-polished input so spec
  // round-trips are bit-identical.
  if (deviation > 4e-15) {
    for (int j = 0; j < m; ++j) {
      for (int l = 0; l < j; ++l) u.col(j) -= u.col(l).dot(u.col(j)) * u.col(l);
      u.col(j) /= u.col(j).norm();
    }
  }
}

int dim(const Mapping& f) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PolynomialMapping>)
          return m.n;
        else if constexpr (std::is_same_v<T, RankOneQuadratic>)
          return static_cast<int>(m.u.size());
        else
          return m.dim();
      },
      f);
}

CVector eval(const Mapping& f, const CVector& z) {
  check_dim(f, z, "eval: point dimension");
  check_ball(z);
  return std::visit(
      [&](const auto& m) -> CVector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PolynomialMapping>) {
          CVector out = z;
          for (const SymTensor& A : m.terms) out += A.eval_diag(z);
          return out;
        } else if constexpr (std::is_same_v<T, RankOneQuadratic>) {
          const cplx s = inner(z, m.u);
          return z + (m.a * s * s) * m.u;
        } else {
          const CVector xi = m.u.adjoint() * z;  // <z,u_j>
          CVector gv(m.rank());
          for (int j = 0; j < m.rank(); ++j) gv(j) = m.g[j].value(xi(j));
          return z - m.u * xi + m.u * gv;
        }
      },
      f);
}

CMatrix dfrechet(const Mapping& f, const CVector& z) {
  check_dim(f, z, "dfrechet: point dimension");
  check_ball(z);
  const int n = dim(f);
  return std::visit(
      [&](const auto& m) -> CMatrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PolynomialMapping>) {
          CMatrix M = CMatrix::Identity(n, n);
          for (const SymTensor& A : m.terms)
            M += static_cast<double>(A.arity()) * A.contract_all_but_one(z);
          return M;
        } else if constexpr (std::is_same_v<T, RankOneQuadratic>) {
          return CMatrix::Identity(n, n) +
                 (2.0 * m.a * inner(z, m.u)) * (m.u * m.u.adjoint());
        } else {
          const CVector xi = m.u.adjoint() * z;
          CMatrix M = CMatrix::Identity(n, n) - m.u * m.u.adjoint();
          for (int j = 0; j < m.rank(); ++j)
            M += m.g[j].deriv(xi(j)) * (m.u.col(j) * m.u.col(j).adjoint());
          return M;
        }
      },
      f);
}

CVector d2frechet(const Mapping& f, const CVector& z, const CVector& x) {
  check_dim(f, z, "d2frechet: point dimension");
  check_dim(f, x, "d2frechet: direction dimension");
  check_ball(z);
  return std::visit(
      [&](const auto& m) -> CVector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PolynomialMapping>) {
          CVector out = CVector::Zero(m.n);
          for (const SymTensor& A : m.terms) {
            const double k = static_cast<double>(A.arity());
            out += k * (k - 1.0) * A.eval_mixed(z, A.arity() - 2, x, 2);
          }
          return out;
        } else if constexpr (std::is_same_v<T, RankOneQuadratic>) {
          const cplx s = inner(x, m.u);
          return (2.0 * m.a * s * s) * m.u;
        } else {
          const CVector xi = m.u.adjoint() * z;
          const CVector eta = m.u.adjoint() * x;  // <x,u_j>
          CVector c(m.rank());
          for (int j = 0; j < m.rank(); ++j)
            c(j) = m.g[j].deriv2(xi(j)) * eta(j) * eta(j);
          return m.u * c;
        }
      },
      f);
}

CVector inv_df_apply(const Mapping& f, const CVector& z, const CVector& v) {
  check_dim(f, z, "inv_df_apply: point dimension");
  check_dim(f, v, "inv_df_apply: vector dimension");
  check_ball(z);
  return std::visit(
      [&](const auto& m) -> CVector {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RankOneQuadratic>) {
          // Df(z) = I + c u u*, so Df(z)^-1 = I - c/(1+c) u u*.
          const cplx c = 2.0 * m.a * inner(z, m.u);
          if (std::abs(1.0 + c) < 1e-12)
            throw NotLocallyBiholomorphic("rank-one quadratic: Df(z) singular");
          return v - (c / (1.0 + c)) * inner(v, m.u) * m.u;
        } else if constexpr (std::is_same_v<T, PhiMapping>) {
          const CVector xi = m.u.adjoint() * z;
          const CVector mu = m.u.adjoint() * v;
          CVector c(m.rank());
          for (int j = 0; j < m.rank(); ++j) {
            const cplx d1 = m.g[j].deriv(xi(j));
            if (std::abs(d1) < 1e-12)
              throw NotLocallyBiholomorphic("phi mapping: g' vanishes");
            c(j) = (1.0 - 1.0 / d1) * mu(j);
          }
          return v - m.u * c;
        } else {
          return solve(dfrechet(f, z), v);
        }
      },
      f);
}

CVector inv_df_apply_generic(const Mapping& f, const CVector& z, const CVector& v) {
  check_dim(f, z, "inv_df_apply: point dimension");
  check_dim(f, v, "inv_df_apply: vector dimension");
  check_ball(z);
  return solve(dfrechet(f, z), v);
}

PolynomialMapping alexander_transform(const PolynomialMapping& f) {
  std::vector<SymTensor> terms;
  terms.reserve(f.terms.size());
  for (const SymTensor& A : f.terms)
    terms.push_back(A.scaled(static_cast<double>(A.arity())));
  return PolynomialMapping(f.n, std::move(terms));
}

CVector phi_inv_d2(const PhiMapping& f, const CVector& z, const CVector& x) {
  if (z.size() != f.dim() || x.size() != f.dim())
    throw DimensionMismatch("phi_inv_d2: dimension");
  check_ball(z);
  const CVector xi = f.u.adjoint() * z;
  const CVector eta = f.u.adjoint() * x;
  CVector c(f.rank());
  for (int j = 0; j < f.rank(); ++j) {
    const cplx d1 = f.g[j].deriv(xi(j));
    if (std::abs(d1) < 1e-12)
      throw NotLocallyBiholomorphic("phi mapping: g' vanishes");
    c(j) = (f.g[j].deriv2(xi(j)) / d1) * eta(j) * eta(j);
  }
  return f.u * c;
}

}  // namespace holoconv
