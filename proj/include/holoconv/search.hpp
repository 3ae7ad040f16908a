#pragma once

#include <optional>
#include <utility>

#include "holoconv/mappings.hpp"
#include "holoconv/rng.hpp"

namespace holoconv {

// An admissible pair (z, x) at which the order-alpha convexity inequality
// fails; only violations (margin < alpha) are emitted. `validated` is set
// when a fresh margin evaluation through the generic dense-solve path agrees
// with the reported value to 1e-8.
struct Witness {
  CVector z;
  CVector x;
  double margin = 0.0;
  double alpha = 0.0;
  bool validated = false;
  std::string path;  // "sampled" or "seeded"
};

struct SearchOutcome {
  std::optional<Witness> witness;
  double best_margin = 0.0;  // lowest margin seen after refinement
  std::size_t evaluated = 0;
  std::size_t singular_points = 0;  // Df(z) not invertible: f not in N(B) locally
};

// Draws z with a uniform direction and radius law u^(1/(2n)) capped at
// radius_cap, and a unit x with Re<x,z> = 0 obtained by real-orthogonal
// projection of a random direction.
std::pair<CVector, CVector> sample_admissible(int n, Rng& rng, double radius_cap);

// Samples cfg.samples admissible pairs, refines the most negative margins by
// projected descent, and returns the best violating witness, or none when
// every evaluated margin stays >= alpha - cfg.tol.
SearchOutcome find_witness(const Mapping& f, OrderParam alpha,
                           const SearchConfig& cfg);

// Evaluates the margin at a caller-supplied admissible seed (x is normalized
// first). A violating seed is returned untouched; otherwise the seed is
// refined locally and reported only if refinement reaches a violation.
SearchOutcome seeded_witness(const Mapping& f, OrderParam alpha,
                             const CVector& z, const CVector& x,
                             const SearchConfig& cfg = {});

struct StarlikeWitness {
  CVector z;
  double margin = 0.0;
  double alpha = 0.0;
};

struct StarlikeSearchOutcome {
  std::optional<StarlikeWitness> witness;
  double best_margin = 0.0;
  std::size_t evaluated = 0;
  std::size_t singular_points = 0;
};

// Same protocol for the order-alpha starlikeness condition: samples z only,
// violation means starlike_margin(f, z, alpha) < -cfg.tol after refinement.
StarlikeSearchOutcome find_starlike_witness(const Mapping& f, OrderParam alpha,
                                            const SearchConfig& cfg);

}  // namespace holoconv
