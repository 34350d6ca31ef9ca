#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlat/matrix.hpp"
#include "qlat/quad_space.hpp"
#include "qlat/rep_oracle.hpp"

namespace qlat {

/// Rank-one component <a>.
struct DiagComponent {
  Rational a;
  bool operator==(const DiagComponent&) const = default;
};

/// gamma * A(xi, eta): Gram [[gamma xi, gamma], [gamma, gamma eta]].
struct PlaneComponent {
  Rational gamma;
  Rational xi;
  Rational eta;
  bool operator==(const PlaneComponent&) const = default;
};

using DyadicComponent = std::variant<DiagComponent, PlaneComponent>;

/// Lattice over Z_2 presented as an orthogonal sum of components.
struct DyadicLattice {
  std::vector<DyadicComponent> components;

  int rank() const;
  bool operator==(const DyadicLattice&) const = default;
};

Matrix gram_of(const DyadicLattice& L);
SpaceInv space_of(const DyadicLattice& L);
DyadicLattice direct_sum(const DyadicLattice& a, const DyadicLattice& b);

struct ScaleNorm {
  int scale_exp;  ///< s(L) = 2^scale_exp Z_2
  int norm_exp;   ///< n(L) = 2^norm_exp Z_2
};
ScaleNorm scale_norm(const Matrix& gram);
ScaleNorm scale_norm(const DyadicLattice& L);

/// One modular constituent of a Jordan splitting over Z_2.
struct JordanConstituent {
  int scale_exp;
  int rank;
  int norm_exp;
};
std::vector<JordanConstituent> dyadic_jordan(const Matrix& gram);

/// Hilbert symbol (1 - sigma 2^t, 1 - 4 rho sigma^-1 2^-t) at 2. Computed for
/// e = 1; for larger e the value -1 is returned as a symbolic assertion.
/// Throws std::invalid_argument unless t is odd in [1, 2e-1] and sigma is odd.
int twist_hilbert_symbol(int t, long sigma, int e = 1);

enum class MaximalType { I, II, III, IV };
std::string to_string(MaximalType t);

/// Parameters of a binary maximal lattice. sigma is empty when symbolic (e > 1).
struct MaximalBinaryDescriptor {
  MaximalType type = MaximalType::IV;
  int i = 0;                   ///< type I exponent, 0 <= i <= e-1
  std::optional<long> sigma;   ///< unit class representative for types I and II
  bool twisted = false;        ///< type I twist factor, type III extra factor 2
  bool delta_lead = false;     ///< type II leading entry Delta instead of 1

  std::string to_string() const;
};

std::vector<MaximalBinaryDescriptor> maximal_binary_list(int e);
/// Concrete lattice over Z_2; only e = 1 descriptors with concrete sigma.
DyadicLattice materialize(const MaximalBinaryDescriptor& d);

/// One maximal binary lattice per binary space over Q_2 (first in list order).
std::vector<DyadicLattice> testing_set_2_universal(int e = 1);

/// 2^-1 A(0,0).
DyadicLattice half_hyperbolic_plane();
/// 2^-1 A(2, 2 rho).
DyadicLattice anisotropic_half_plane();

struct QuaternaryVerdict {
  bool universal = false;
  ScaleNorm scale_norm{0, 0};
  bool half_modular = false;
  bool hyperbolic_space = false;
};

/// 2-universality of a quaternary lattice with integral norm. Throws
/// std::invalid_argument for other ranks or non-integral norm.
QuaternaryVerdict quaternary_2_universal(const Matrix& gram);
bool is_2_universal_quaternary(const DyadicLattice& L);

/// True iff s(N) is in Z_2 and n(N) in 2Z_2, which rules out
/// 2^-1 A(2,2rho) -> 2^-1 A(0,0) + N.
bool excludes_anisotropic_half_plane(const DyadicLattice& N);

/// Always false: no lattice with scale in Z_2 of rank 4 is 2-universal over Z_2.
bool classic_2_universal_quaternary_exists();

/// Binary lattices with scale in Z_2 used to refute candidate classic quaternaries.
std::vector<DyadicLattice> classic_binary_probes();

struct ClassicWitness {
  std::optional<std::size_t> probe;  ///< index into classic_binary_probes() not represented
  int precision = 0;
};
/// For each candidate, the first probe the oracle shows is not represented.
std::vector<ClassicWitness> classic_quaternary_witnesses(const std::vector<DyadicLattice>& candidates,
                                                         OracleConfig cfg = {});

/// "d:a" for <a>, "p:g:x:h" for g A(x, h), joined by ';'.
DyadicLattice parse_blocks(std::string_view text);
std::string format_blocks(const DyadicLattice& L);

}  // namespace qlat
