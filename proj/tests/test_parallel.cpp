#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "holoconv/criteria.hpp"
#include "holoconv/parallel.hpp"
#include "holoconv/search.hpp"
#include "test_util.hpp"

using namespace holoconv;
using namespace holoconv::testutil;

TEST_CASE("for_each_index covers every index exactly once under both policies") {
  for (Exec exec : {Exec::Serial, Exec::Parallel}) {
    std::vector<int> hits(10000, 0);
    for_each_index(hits.size(), exec, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 10000);
    CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
  }
}

TEST_CASE("witness search is bit-identical across execution policies") {
  Rng rng(81);
  const Mapping f = RankOneQuadratic(std::polar(0.3, 0.7), random_unit(2, rng));
  SearchConfig cfg;
  cfg.samples = 30000;
  cfg.seed = 5;
  cfg.exec = Exec::Serial;
  const SearchOutcome ser = find_witness(f, OrderParam(0.0), cfg);
  cfg.exec = Exec::Parallel;
  const SearchOutcome par = find_witness(f, OrderParam(0.0), cfg);
  REQUIRE(ser.witness.has_value());
  REQUIRE(par.witness.has_value());
  CHECK(ser.best_margin == par.best_margin);
  CHECK(ser.singular_points == par.singular_points);
  CHECK((ser.witness->z - par.witness->z).norm() == 0.0);
  CHECK((ser.witness->x - par.witness->x).norm() == 0.0);
}

TEST_CASE("norm estimation is bit-identical across execution policies") {
  Rng rng(82);
  const SymTensor A = random_dense_tensor(3, 4, rng, 0.4);
  NormConfig cfg;
  cfg.exec = Exec::Serial;
  const NormEstimate ser = A.op_norm(cfg);
  cfg.exec = Exec::Parallel;
  const NormEstimate par = A.op_norm(cfg);
  CHECK(ser.value == par.value);
  CHECK(ser.converged == par.converged);
}

TEST_CASE("growth sampling is bit-identical across execution policies") {
  Rng rng(83);
  const Mapping f = RankOneQuadratic(cplx(0.25, 0.0), random_unit(3, rng));
  SearchConfig cfg;
  cfg.samples = 20000;
  cfg.seed = 11;
  cfg.exec = Exec::Serial;
  const GrowthReport ser = growth_check(f, OrderParam(0.0), cfg);
  cfg.exec = Exec::Parallel;
  const GrowthReport par = growth_check(f, OrderParam(0.0), cfg);
  CHECK(ser.worst_slack == par.worst_slack);
  CHECK(ser.violations == par.violations);
}
