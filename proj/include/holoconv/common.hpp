#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace holoconv {

using cplx = std::complex<double>;

// Strict open inequalities are certified with this fixed positive slack.
inline constexpr double kStrictSlack = 1e-9;

// Dense solves refuse matrices whose 1-norm condition estimate exceeds this.
inline constexpr double kCondLimit = 1e12;

// Tangency constraint Re<x,z> = 0 is accepted up to this relative deviation.
inline constexpr double kTangencyTol = 1e-10;

// Execution policy for the data-parallel kernels. Serial and Parallel paths
// produce bit-identical results: every sample owns an index-derived RNG
// stream and reductions are order-independent.
enum class Exec { Serial, Parallel };

// Df(z) is singular or too ill-conditioned to invert: f is not locally
// biholomorphic at z (or a 1-D derivative vanished).
struct NotLocallyBiholomorphic : std::runtime_error {
  explicit NotLocallyBiholomorphic(const std::string& what)
      : std::runtime_error(what) {}
};

struct TangencyViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Order parameter alpha in [0, 1).
struct OrderParam {
  double alpha = 0.0;

  OrderParam() = default;
  explicit OrderParam(double a) : alpha(a) {
    if (!(a >= 0.0 && a < 1.0))
      throw std::invalid_argument("order parameter must lie in [0, 1)");
  }
};

// Knobs shared by the witness search and the sampled certificates.
struct SearchConfig {
  std::size_t samples = 100000;
  int refine_steps = 200;
  std::uint64_t seed = 1;
  double radius_cap = 0.999;
  double tol = 1e-10;
  Exec exec = Exec::Parallel;
};

}  // namespace holoconv
