#pragma once

#include <cstdint>
#include <vector>

#include "holoconv/linalg.hpp"

namespace holoconv {

// Knobs for the sphere-ascent operator-norm estimator.
struct NormConfig {
  int restarts = 32;
  int max_iters = 200;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  Exec exec = Exec::Parallel;
};

// op_norm result. The value is a certified lower bound for the true norm,
// within cfg.tol of a local stationary value when converged.
struct NormEstimate {
  double value = 0.0;
  bool converged = true;
};

// Bounded symmetric k-linear operator A : (C^n)^k -> C^n.
//
// Two storage forms:
//  - dense coefficients indexed by (output i, inputs j1..jk), symmetrized in
//    the input indices at construction;
//  - a structured rank-one form A(v1,..,vk) = a * prod_t <v_t,u> * u, which
//    keeps terms like a<z,u>^k u exact and cheap at any dimension.
class SymTensor {
 public:
  // coeffs holds n^(k+1) entries, layout [i][j1..jk] row-major. Arbitrary
  // input is accepted and symmetrized over the input indices.
  static SymTensor dense(int k, int n, std::vector<cplx> coeffs);
  static SymTensor rank_one(int k, cplx a, CVector u);

  int arity() const { return k_; }
  int dim() const { return n_; }
  bool is_rank_one() const { return rank_one_; }

  cplx coeff_a() const;
  const CVector& direction() const;
  const std::vector<cplx>& coeffs() const;

  // A(v1,...,vk); multilinear in every slot.
  CVector eval(const std::vector<CVector>& args) const;

  // A(z^k)
  CVector eval_diag(const CVector& z) const;

  // A(z^zc, x^xc) with zc + xc = k (slots interchangeable by symmetry).
  CVector eval_mixed(const CVector& z, int z_count, const CVector& x,
                     int x_count) const;

  // Matrix of v |-> A(z^(k-1), v).
  CMatrix contract_all_but_one(const CVector& z) const;

  SymTensor scaled(cplx c) const;

  // sup over the unit sphere of ||A(x^k)||, which equals the full operator
  // norm for symmetric maps on a complex Hilbert space. Exact for the
  // rank-one form; multi-start projected ascent otherwise.
  NormEstimate op_norm(const NormConfig& cfg = {}) const;

 private:
  SymTensor() = default;

  int k_ = 0;
  int n_ = 0;
  bool rank_one_ = false;
  cplx a_{};
  CVector u_;
  std::vector<cplx> c_;  // dense form, size n^(k+1)
  std::size_t np_ = 0;   // n^k
};

}  // namespace holoconv
