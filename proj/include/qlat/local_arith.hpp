#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlat/rational.hpp"

namespace qlat {

/// A place of Q: a finite prime or the real place.
class Place {
 public:
  static Place real() { return Place(0); }
  /// Throws std::invalid_argument unless p is prime.
  static Place finite(long p);

  bool is_real() const { return p_ == 0; }
  bool is_dyadic() const { return p_ == 2; }
  /// The prime of a finite place (0 for the real place).
  long prime() const { return p_; }

  bool operator==(const Place&) const = default;
  std::string to_string() const;

 private:
  explicit Place(long p) : p_(p) {}
  long p_;
};

/// Canonical local constants at a finite prime.
struct LocalUnitData {
  long p;
  int e;             ///< ord_p(2)
  long uniformizer;  ///< the integer p
  long delta;        ///< canonical non-square unit
  Rational rho;      ///< delta = 1 - 4 rho (p = 2 only; zero otherwise)
};

LocalUnitData local_unit_data(long p);

/// Canonical non-square unit: smallest positive non-residue for odd p, 5 at p = 2.
long delta(long p);

/// Element of Q_v^x / (Q_v^x)^2.
struct SquareClass {
  Place place = Place::real();
  int v = 0;  ///< valuation parity (finite places)
  int u = 0;  ///< odd p: 1 iff non-residue unit; p = 2: unit mod 8; real: 1 iff negative

  bool is_identity() const;
  /// Smallest positive-modulus integer in the class (p^v * unit rep, or +-1).
  Integer representative() const;
  SquareClass operator*(const SquareClass& o) const;
  bool operator==(const SquareClass&) const = default;
  std::string to_string() const;

  /// Every class at the place, in a fixed order.
  static std::vector<SquareClass> all(const Place& place);
};

SquareClass square_class(const Rational& a, const Place& v);
inline SquareClass square_class(const Rational& a, long p) { return square_class(a, Place::finite(p)); }

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);
int hilbert_symbol(const SquareClass& a, const SquareClass& b);

/// Exponent-coded ideal; the zero ideal is its own variant.
class QuadraticDefect {
 public:
  static QuadraticDefect zero() { return QuadraticDefect(std::nullopt); }
  static QuadraticDefect power(int n) { return QuadraticDefect(n); }
  bool is_zero() const { return !exp_; }
  /// Throws std::logic_error for the zero ideal.
  int exponent() const;
  bool operator==(const QuadraticDefect&) const = default;
  std::string to_string() const;

 private:
  explicit QuadraticDefect(std::optional<int> e) : exp_(e) {}
  std::optional<int> exp_;
};

QuadraticDefect quadratic_defect(const Rational& a, long p);

/// Legendre symbol (a/p) for odd prime p.
int legendre(const Integer& a, long p);

/// (-1)^((p-1)/2) p, always 1 mod 4.
long p_star(long p);

}  // namespace qlat
