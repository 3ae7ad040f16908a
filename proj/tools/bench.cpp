// Compares the serial reference path against the OpenMP path for the three
// data-parallel kernels and verifies that both produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "holoconv/criteria.hpp"
#include "holoconv/rng.hpp"
#include "holoconv/search.hpp"

using namespace holoconv;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class F>
double time_run(F&& fn) {
  const double t0 = now_s();
  fn();
  return now_s() - t0;
}

void report(const char* name, double serial_s, double parallel_s, bool match) {
  std::printf("%-28s serial %8.3fs   openmp %8.3fs   speedup %5.2fx   results %s\n",
              name, serial_s, parallel_s, serial_s / parallel_s,
              match ? "identical" : "DIFFER");
  if (!match) std::exit(1);
}

SymTensor random_dense_tensor(int k, int n, std::uint64_t seed, double scale) {
  Rng rng(seed);
  std::size_t total = static_cast<std::size_t>(n);
  for (int i = 0; i < k; ++i) total *= static_cast<std::size_t>(n);
  std::vector<cplx> c(total);
  for (cplx& v : c) v = scale * rng.cgaussian();
  return SymTensor::dense(k, n, std::move(c));
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled at build time; both paths run serially\n\n");
#endif

  // witness search on the sharp rank-one family
  {
    CVector u(2);
    u << cplx(1, 0), cplx(0, 0);
    const Mapping f = RankOneQuadratic(cplx(0.3, 0.1), u);
    SearchConfig cfg;
    cfg.samples = 200000;
    SearchOutcome ser, par;
    cfg.exec = Exec::Serial;
    const double ts = time_run([&] { ser = find_witness(f, OrderParam(0.0), cfg); });
    cfg.exec = Exec::Parallel;
    const double tp = time_run([&] { par = find_witness(f, OrderParam(0.0), cfg); });
    const bool match = ser.best_margin == par.best_margin &&
                       ser.singular_points == par.singular_points &&
                       ser.witness.has_value() == par.witness.has_value();
    report("find_witness 2e5 samples", ts, tp, match);
  }

  // multi-start tensor norm ascent
  {
    const SymTensor A = random_dense_tensor(3, 8, 7, 0.05);
    NormConfig cfg;
    cfg.restarts = 64;
    NormEstimate ser, par;
    cfg.exec = Exec::Serial;
    const double ts = time_run([&] { ser = A.op_norm(cfg); });
    cfg.exec = Exec::Parallel;
    const double tp = time_run([&] { par = A.op_norm(cfg); });
    report("op_norm k=3 n=8 64 starts", ts, tp,
           ser.value == par.value && ser.converged == par.converged);
  }

  // growth-bound sampling on a certified polynomial mapping
  {
    CVector u(3);
    u << cplx(1, 0), cplx(0, 0), cplx(0, 0);
    PolynomialMapping f(3, {SymTensor::rank_one(2, cplx(0.25, 0.0), u)});
    SearchConfig cfg;
    cfg.samples = 100000;
    GrowthReport ser, par;
    cfg.exec = Exec::Serial;
    const double ts =
        time_run([&] { ser = growth_check(f, OrderParam(0.0), cfg); });
    cfg.exec = Exec::Parallel;
    const double tp =
        time_run([&] { par = growth_check(f, OrderParam(0.0), cfg); });
    report("growth_check 1e5 samples", ts, tp,
           ser.worst_slack == par.worst_slack && ser.violations == par.violations);
  }
  return 0;
}
