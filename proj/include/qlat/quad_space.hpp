#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlat/local_arith.hpp"
#include "qlat/matrix.hpp"

namespace qlat {

/// Isometry invariants of a nonzero quadratic space over Q_v.
/// Finite places are classified by (dim, det, hasse); the real place by (pos, neg).
struct SpaceInv {
  Place place = Place::real();
  int dim = 0;
  SquareClass det;
  int hasse = 1;
  int pos = 0;
  int neg = 0;

  std::string to_string() const;
};

/// Hasse symbol taken over i <= j.
SpaceInv inv_of_diagonal(const std::vector<Rational>& entries, const Place& v);
SpaceInv inv_of_gram(const Matrix& gram, const Place& v);
SpaceInv inv_of_class(const SquareClass& c);
SpaceInv hyperbolic_plane(const Place& v);

SpaceInv orthogonal_sum(const SpaceInv& a, const SpaceInv& b);
bool isometric(const SpaceInv& a, const SpaceInv& b);

bool is_isotropic(const SpaceInv& v);
/// True iff U embeds isometrically in V.
bool space_represents(const SpaceInv& u, const SpaceInv& v);
bool space_k_universal(const SpaceInv& v, int k);
/// Over C every space of dimension >= k is k-universal.
bool complex_k_universal(int dim, int k);

/// Same dim and det with the Hasse symbol negated; none for lines and for H.
std::optional<SpaceInv> sibling_space(const SpaceInv& v);

bool is_realizable(const SpaceInv& v);
/// All isometry classes of the given dimension at the place.
std::vector<SpaceInv> enumerate_spaces(const Place& v, int dim);

}  // namespace qlat
