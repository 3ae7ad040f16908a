#include "holoconv/linalg.hpp"

#include <limits>

namespace holoconv {

cplx inner(const CVector& z, const CVector& w) {
  if (z.size() != w.size())
    throw DimensionMismatch("inner: vectors of dimension " +
                            std::to_string(z.size()) + " and " +
                            std::to_string(w.size()));
  // Eigen's dot conjugates its object, so w.dot(z) = sum_i conj(w_i) z_i.
  return w.dot(z);
}

double norm_of(const CVector& z) { return z.norm(); }

namespace {

// Eigen's rcond() misses exactly singular inputs (zero pivot), so check the
// LU diagonal as well.
double reciprocal_condition(const Eigen::PartialPivLU<CMatrix>& lu) {
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0) return 0.0;
  return lu.rcond();
}

}  // namespace

CVector solve(const CMatrix& M, const CVector& b) {
  if (M.rows() != M.cols())
    throw DimensionMismatch("solve: matrix is not square");
  if (M.rows() != b.size())
    throw DimensionMismatch("solve: right-hand side has wrong dimension");
  Eigen::PartialPivLU<CMatrix> lu(M);
  const double rcond = reciprocal_condition(lu);
  if (!(rcond > 1.0 / kCondLimit))
    throw NotLocallyBiholomorphic("solve: condition estimate " +
                                  std::to_string(1.0 / rcond) +
                                  " exceeds guard threshold");
  return lu.solve(b);
}

double cond_estimate(const CMatrix& M) {
  Eigen::PartialPivLU<CMatrix> lu(M);
  const double rcond = reciprocal_condition(lu);
  if (!(rcond > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / rcond;
}

double op2norm(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  return M.jacobiSvd().singularValues()(0);
}

}  // namespace holoconv
