#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "qlat/matrix.hpp"

namespace qlat {

enum class Answer { yes, no, undecided };
std::string to_string(Answer a);

struct OracleConfig {
  long p = 2;
  /// Working precision exponent; defaults to
  /// 2e + 1 + ord det L + ord det M + lift_margin on the rescaled Gram matrices.
  std::optional<int> precision;
  int lift_margin = 2;
  /// Largest residue group (or sparse state count) the search may allocate.
  std::size_t state_cap = std::size_t{1} << 26;
};

struct OracleResult {
  Answer answer = Answer::undecided;
  int precision = 0;           ///< precision the verdict is reported at
  int required_precision = 0;  ///< smallest precision at which the search is exact
  int scale_shift = 0;         ///< both Gram matrices were multiplied by p^scale_shift
  /// Columns are the images of L's basis in M's coordinates, reduced mod p^precision.
  std::optional<Matrix> witness;
  std::string reason;
};

/// Thrown when the search would exceed OracleConfig::state_cap.
class OracleResourceError : public std::runtime_error {
 public:
  OracleResourceError(const std::string& what, std::size_t state_size)
      : std::runtime_error(what), state_size_(state_size) {}
  std::size_t state_size() const { return state_size_; }

 private:
  std::size_t state_size_;
};

int default_precision(const Matrix& L, const Matrix& M, long p, int lift_margin = 2);

/// Decides whether the Z_p-lattice with Gram matrix L embeds isometrically in
/// the one with Gram matrix M.
OracleResult represents_lattice(const Matrix& L, const Matrix& M, const OracleConfig& cfg);
OracleResult represents_value(const Matrix& M, const Rational& a, const OracleConfig& cfg);

/// True iff no lattice L + Z_p v with v in p^-1 L \ L has integral norm.
/// Requires L itself to have integral norm.
bool norm_maximal(const Matrix& L, long p);

/// norm_maximal restricted to anisotropic spaces, where it characterizes the
/// unique maximal lattice. Throws std::invalid_argument on isotropic input.
bool maximality_scan(const Matrix& L, long p);

}  // namespace qlat
