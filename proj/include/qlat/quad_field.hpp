#pragma once

#include <string>
#include <vector>

namespace qlat {

enum class DyadicBehavior { split, inert, ramified };
std::string to_string(DyadicBehavior b);

/// Discriminant and ramification data of Q(sqrt m).
struct QuadFieldProfile {
  long m = 0;                     ///< squarefree radicand
  long d_F = 0;                   ///< fundamental discriminant
  bool is_real = false;
  std::vector<long> odd_ramified; ///< odd primes dividing d_F, increasing
  std::vector<long> p_stars;      ///< (-1)^((p-1)/2) p for each odd ramified p
  DyadicBehavior dyadic = DyadicBehavior::split;
};

bool is_squarefree(long m);
/// Throws std::invalid_argument for m in {0, 1} or m not squarefree.
QuadFieldProfile profile(long m);

/// Squarefree part of a nonzero integer, sign kept.
long squarefree_part(long n);

/// Radicands c (canonical per pair {c, c m}) such that F(sqrt c) is a quadratic
/// extension unramified at every place, finite and infinite. Sorted by |c|, then sign.
std::vector<long> unramified_quadratic_extensions(const QuadFieldProfile& P);
/// Canonical member of {c, c m}: the one built from p* factors, then smaller |c|, then positive.
long canonical_extension_class(long c, const QuadFieldProfile& P);

bool class_number_even(const QuadFieldProfile& P);

/// Genus carrying every 2-LNG lattice when one exists.
inline constexpr const char* kTwoLngGenus = "2^-1 A(0,0) + 2^-1 A(0,0) at each dyadic prime";
bool admits_2_lng(const QuadFieldProfile& P);

/// True iff the dyadic primes of F split completely in F(sqrt c).
/// Throws std::invalid_argument unless c is one of unramified_quadratic_extensions(P).
bool splits_completely_at_dyadic(long c, const QuadFieldProfile& P);
bool admits_classic_1_lng(const QuadFieldProfile& P);

/// Congruence-pattern table of quadratic fields with no classic ternary 1-LNG lattice.
bool in_no_classic_1_lng_table(const QuadFieldProfile& P);

struct AtlasRow {
  QuadFieldProfile profile;
  std::vector<long> extensions;
  bool h_even = false;
  bool lng2 = false;
  bool lng1_first_principles = false;
  bool lng1_table = false;  ///< admits per the table, i.e. not listed
  bool consistent = false;
};
AtlasRow atlas_row(long m);

/// Rows for squarefree m with 2 <= |m| <= max_abs, ordered by |m| then sign
/// (negative first). Uses QLAT_THREADS worker threads when set.
/// Throws std::invalid_argument when max_abs < 2.
std::vector<AtlasRow> atlas(long max_abs);

}  // namespace qlat
