#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qlat/rational.hpp"

namespace qlat {

/// Ternary lattice at odd p that represents three of the four rank-one testing
/// lattices and misses the one at `missing` (index into testing_set_models(p, 1)).
struct MinimalityWitness {
  std::vector<Rational> diag;
  std::size_t missing;
};
std::vector<MinimalityWitness> rank_one_minimality_witnesses(long p);

struct ReferenceCheck {
  std::string topic;
  std::string claim;
  bool passed = false;
  std::string detail;  ///< exception text or observed value on failure
};

/// Published worked examples, each recomputed from scratch.
std::vector<ReferenceCheck> run_reference_checks();

}  // namespace qlat
