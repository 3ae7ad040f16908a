#pragma once

#include <cstddef>

#include "holoconv/common.hpp"

namespace holoconv {

// Runs body(i) for i in [0, count). With Exec::Parallel the iterations are
// distributed over OpenMP threads; bodies must only write state owned by
// their own index so both policies produce identical results.
template <class F>
void for_each_index(std::size_t count, Exec exec, F&& body) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
}

}  // namespace holoconv
