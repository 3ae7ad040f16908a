#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "holoconv/linalg.hpp"
#include "holoconv/rng.hpp"

using namespace holoconv;

namespace {

CVector vec2(cplx a, cplx b) {
  CVector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("inner product convention: linear in first, conjugate in second") {
  const cplx i(0.0, 1.0);
  CHECK(inner(vec2(1, 0), vec2(1, 0)) == cplx(1, 0));
  CHECK(inner(vec2(i, 0), vec2(0, 1)) == cplx(0, 0));
  CHECK(inner(vec2(cplx(1, 1), 0), vec2(1, 0)) == cplx(1, 1));
  CHECK(inner(vec2(1, 0), vec2(cplx(1, 1), 0)) == cplx(1, -1));
}

TEST_CASE("inner product rejects dimension mismatch") {
  CVector a(2), b(3);
  a.setZero();
  b.setZero();
  CHECK_THROWS_AS(inner(a, b), DimensionMismatch);
}

TEST_CASE("conjugate symmetry and parallelogram law on random pairs") {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 6);
    CVector z(n), w(n);
    for (int j = 0; j < n; ++j) {
      z(j) = rng.cgaussian();
      w(j) = rng.cgaussian();
    }
    const cplx zw = inner(z, w);
    const cplx wz = inner(w, z);
    CHECK(std::abs(zw - std::conj(wz)) <= 1e-14 * (1.0 + std::abs(zw)));

    const double lhs = std::pow(norm_of(z + w), 2) + std::pow(norm_of(z - w), 2);
    const double rhs = 2.0 * std::pow(norm_of(z), 2) + 2.0 * std::pow(norm_of(w), 2);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + rhs));
  }
}

TEST_CASE("tangency pairing regression on fixed vectors") {
  const CVector z = vec2(cplx(0.3, 0.4), cplx(-0.2, 0.1));
  const CVector x = vec2(cplx(0.5, -0.2), cplx(0.7, 0.6));
  // hand evaluation of Re sum_i x_i conj(z_i)
  CHECK(std::real(inner(x, z)) == doctest::Approx(-0.01).epsilon(1e-12));
}

TEST_CASE("solve: identity and scaling") {
  const CVector b = vec2(cplx(2, 0), cplx(4, 0));
  CHECK(norm_of(solve(CMatrix::Identity(2, 2), b) - b) == 0.0);
  const CVector v = solve(2.0 * CMatrix::Identity(2, 2), b);
  CHECK(norm_of(v - vec2(1, 2)) <= 1e-15);
}

TEST_CASE("solve round-trip on random well-conditioned systems") {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);
    CMatrix M = CMatrix::Identity(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) M(r, c) += 0.3 * rng.cgaussian();
    CVector v(n);
    for (int j = 0; j < n; ++j) v(j) = rng.cgaussian();
    const CVector b = M * v;
    const CVector w = solve(M, b);
    const double res = (M * w - b).norm();
    CHECK(res <= 1e-10 * (M.norm() * w.norm() + b.norm()));
    CHECK((w - v).norm() <= 1e-8 * (1.0 + v.norm()));
  }
}

TEST_CASE("solve refuses singular and near-singular matrices") {
  CMatrix M = CMatrix::Zero(2, 2);
  M(0, 0) = 1.0;
  CVector b = vec2(1, 1);
  CHECK_THROWS_AS(solve(M, b), NotLocallyBiholomorphic);
  M(1, 1) = 1e-15;  // condition ~1e15 > guard
  CHECK_THROWS_AS(solve(M, b), NotLocallyBiholomorphic);
  CHECK(cond_estimate(M) > kCondLimit);
}

TEST_CASE("op2norm matches the known norm of simple matrices") {
  CHECK(op2norm(CMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  CMatrix M = CMatrix::Zero(2, 2);
  M(0, 1) = cplx(0, 3);
  CHECK(op2norm(M) == doctest::Approx(3.0));
}
