#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlat/matrix.hpp"
#include "qlat/quad_space.hpp"
#include "qlat/rep_oracle.hpp"

namespace qlat {

/// One modular component p^scale_exp * (unimodular of given rank and det class).
struct JordanBlock {
  int scale_exp = 0;
  int rank = 1;
  bool nonsquare_det = false;  ///< det unit class is Delta rather than 1

  bool operator==(const JordanBlock&) const = default;
};

/// Jordan invariants of a lattice over a non-dyadic ring. Over Z_p (p odd) these
/// determine the isometry class. Abstract rings carry only the residue size q.
struct JordanLatticeND {
  long p = 0;  ///< concrete odd prime, 0 for an abstract ring
  long q = 0;  ///< residue field size
  std::vector<JordanBlock> blocks;

  bool concrete() const { return p != 0; }
  int rank() const;
  bool operator==(const JordanLatticeND&) const = default;
};

/// Validates p and block ordering (strictly increasing scales, positive ranks).
JordanLatticeND make_jordan(long p, std::vector<JordanBlock> blocks);
/// Non-dyadic ring with residue field of odd size q (a prime power).
JordanLatticeND make_abstract_jordan(long q, std::vector<JordanBlock> blocks);

JordanLatticeND jordan_from_gram(const Matrix& gram, long p);
/// <p^s, ..., p^s, p^s * Delta> per block.
std::vector<Rational> diagonal_model(const JordanLatticeND& L);
Matrix gram_of(const JordanLatticeND& L);
SpaceInv space_of(const JordanLatticeND& L);

/// Diagonal Gram entries of the minimal testing set for k-universality over Z_p.
std::vector<std::vector<Rational>> testing_set_models(long p, int k);
std::vector<JordanLatticeND> testing_set(long p, int k);

struct CriterionVerdict {
  bool universal = false;
  std::string clause;  ///< which structural condition decided
};

/// Structural k-universality test from the Jordan data (k >= 2, integral lattices).
CriterionVerdict k_universal_criterion(const JordanLatticeND& L, int k);
bool is_k_universal(const JordanLatticeND& L, int k);

/// Raised when the oracle cannot decide at the configured precision.
class UndecidedError : public std::runtime_error {
 public:
  UndecidedError(const std::string& what, int precision) : std::runtime_error(what), precision_(precision) {}
  int precision() const { return precision_; }

 private:
  int precision_;
};

struct TestingVerdict {
  bool universal = false;
  std::optional<std::size_t> failing_index;  ///< first testing lattice not represented
  std::vector<Rational> failing_model;
  std::size_t oracle_calls = 0;
};

/// Checks representation of every testing lattice with the oracle. cfg.p is overridden.
TestingVerdict is_k_universal_via_testing(const Matrix& gram, long p, int k, OracleConfig cfg = {});
TestingVerdict is_k_universal_via_testing(const JordanLatticeND& L, int k, OracleConfig cfg = {});

/// <p, -Delta p>, the maximal lattice on its anisotropic plane.
JordanLatticeND maximal_binary_anisotropic(long p);

/// "scale:rank:det" triples joined by commas, det in {1, D}; e.g. "0:3:1,1:2:D".
JordanLatticeND parse_jordan(std::string_view text, long p);
std::string format_jordan(const JordanLatticeND& L);

}  // namespace qlat
