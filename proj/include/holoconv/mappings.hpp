#pragma once

#include <variant>
#include <vector>

#include "holoconv/disk.hpp"
#include "holoconv/multilinear.hpp"

namespace holoconv {

// f(z) = z + sum_k A_k(z^k), arities 2..6. Normalized by construction:
// f(0) = 0 and Df(0) = I.
struct PolynomialMapping {
  int n = 1;
  std::vector<SymTensor> terms;

  PolynomialMapping() = default;
  PolynomialMapping(int dim, std::vector<SymTensor> ts);
};

// f(z) = z + a <z,u>^2 u with ||u|| = 1.
struct RankOneQuadratic {
  cplx a{};
  CVector u;

  RankOneQuadratic() = default;
  RankOneQuadratic(cplx coeff, CVector dir);
};

// f(z) = z - sum_j <z,u_j> u_j + sum_j g_j(<z,u_j>) u_j over pairwise
// orthonormal directions u_1..u_m, m >= 2, lifting disk functions g_j to the
// ball.
struct PhiMapping {
  CMatrix u;  // n x m, orthonormal columns
  std::vector<DiskFunction> g;

  PhiMapping() = default;
  PhiMapping(CMatrix directions, std::vector<DiskFunction> fns);

  int dim() const { return static_cast<int>(u.rows()); }
  int rank() const { return static_cast<int>(u.cols()); }
};

using Mapping = std::variant<PolynomialMapping, RankOneQuadratic, PhiMapping>;

int dim(const Mapping& f);

// f(z); requires ||z|| < 1.
CVector eval(const Mapping& f, const CVector& z);

// Matrix of the Frechet derivative Df(z); Df(0) = I for every family.
CMatrix dfrechet(const Mapping& f, const CVector& z);

// D^2 f(z)(x, x).
CVector d2frechet(const Mapping& f, const CVector& z, const CVector& x);

// w with Df(z) w = v. Closed form for the rank-one and Phi families,
// dense LU solve otherwise. Throws NotLocallyBiholomorphic when Df(z) is
// singular or too ill-conditioned.
CVector inv_df_apply(const Mapping& f, const CVector& z, const CVector& v);

// Same contract, but always goes through the dense solver. Cross-check path
// for the closed forms.
CVector inv_df_apply_generic(const Mapping& f, const CVector& z, const CVector& v);

// g(z) = Df(z)(z): term-wise A_k -> k A_k, identity term unchanged.
PolynomialMapping alexander_transform(const PolynomialMapping& f);

// Df(z)^-1 D^2 f(z)(x,x) = sum_j (g_j''/g_j')(<z,u_j>) <x,u_j>^2 u_j.
CVector phi_inv_d2(const PhiMapping& f, const CVector& z, const CVector& x);

}  // namespace holoconv
