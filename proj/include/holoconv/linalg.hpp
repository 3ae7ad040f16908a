#pragma once

#include <Eigen/Dense>

#include "holoconv/common.hpp"

namespace holoconv {

// Points z in C^n and Frechet derivatives Df(z) as dense complex matrices.
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Hilbert inner product <z,w>: linear in z, conjugate-linear in w.
cplx inner(const CVector& z, const CVector& w);

double norm_of(const CVector& z);

// Dense LU solve with partial pivoting. Throws NotLocallyBiholomorphic when
// the 1-norm condition estimate exceeds kCondLimit.
CVector solve(const CMatrix& M, const CVector& b);

// 1-norm based condition estimate (inf for singular input).
double cond_estimate(const CMatrix& M);

// Operator 2-norm (largest singular value).
double op2norm(const CMatrix& M);

}  // namespace holoconv
