#include <doctest.h>

#include <random>
#include <set>

#include "qlat/local_arith.hpp"
#include "support/oracles.hpp"

using namespace qlat;

namespace {

std::set<long> prime_divisors(Integer n) {
  std::set<long> out;
  n = abs(n);
  for (long q = 2; n > 1 && q < 100000; ++q)
    while (n % q == 0) {
      out.insert(q);
      n /= q;
    }
  if (n > 1) out.insert(n.get_si());
  return out;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-600, 600), den(1, 60);
  long a = 0;
  while (a == 0) a = num(rng);
  Rational r(a, den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("local_arith") {
  TEST_CASE("places") {
    CHECK(Place::finite(7).prime() == 7);
    CHECK(Place::real().is_real());
    CHECK(Place::finite(2).is_dyadic());
    CHECK_THROWS_AS(Place::finite(9), std::invalid_argument);
    CHECK_THROWS_AS(Place::finite(1), std::invalid_argument);
  }

  TEST_CASE("local unit data") {
    auto d2 = local_unit_data(2);
    CHECK(d2.e == 1);
    CHECK(d2.delta % 8 == 5);
    CHECK(1 - 4 * d2.rho == d2.delta);
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
      auto d = local_unit_data(p);
      CHECK(d.e == 0);
      CHECK(legendre(Integer(d.delta), p) == -1);
      for (long x = 2; x < d.delta; ++x) CHECK(legendre(Integer(x), p) == 1);
    }
  }

  TEST_CASE("square classes") {
    CHECK(square_class(Rational(17), 2).is_identity());
    CHECK(square_class(Rational(1), Place::real()).is_identity());
    CHECK(square_class(Rational(1), 3).is_identity());
    auto c5 = square_class(Rational(5), 2);
    CHECK(c5.v == 0);
    CHECK(c5.u == 5);
    CHECK(c5 == square_class(Rational(local_unit_data(2).delta), 2));
    CHECK_THROWS(square_class(Rational(0), 3));
    CHECK(SquareClass::all(Place::finite(3)).size() == 4);
    CHECK(SquareClass::all(Place::finite(2)).size() == 8);
    CHECK(SquareClass::all(Place::real()).size() == 2);
    for (const auto& c : SquareClass::all(Place::finite(2)))
      CHECK(square_class(Rational(c.representative()), 2) == c);
  }

  TEST_CASE("square classes close under multiplication") {
    for (const Place& v : {Place::finite(2), Place::finite(3), Place::finite(5), Place::real()}) {
      auto all = SquareClass::all(v);
      for (const auto& a : all)
        for (const auto& b : all) {
          auto prod = a * b;
          CHECK(square_class(Rational(a.representative() * b.representative()), v) == prod);
        }
    }
  }

  TEST_CASE("hilbert symbol examples") {
    CHECK(hilbert_symbol(Rational(-1), Rational(-1), Place::finite(2)) == -1);
    CHECK(hilbert_symbol(Rational(-1), Rational(-1), Place::real()) == -1);
    CHECK(hilbert_symbol(Rational(-1), Rational(-1), Place::finite(3)) == 1);
    for (long b : {2L, -3L, 5L, 6L, 7L})
      for (long p : {2L, 3L, 5L, 7L}) CHECK(hilbert_symbol(Rational(1), Rational(b), Place::finite(p)) == 1);
  }

  TEST_CASE("hilbert symbol agrees with brute-force solvability on all class pairs") {
    for (long p : {2L, 3L, 5L, 7L}) {
      auto all = SquareClass::all(Place::finite(p));
      for (const auto& a : all)
        for (const auto& b : all) {
          auto ra = a.representative().get_si(), rb = b.representative().get_si();
          CAPTURE(p);
          CAPTURE(ra);
          CAPTURE(rb);
          CHECK(hilbert_symbol(a, b) == oracle::hilbert(ra, rb, p));
        }
    }
  }

  TEST_CASE("hilbert symbol properties") {
    std::mt19937_64 rng(oracle::seed());
    std::vector<Place> places = {Place::real(), Place::finite(2), Place::finite(3), Place::finite(5),
                                 Place::finite(7), Place::finite(13)};
    for (int it = 0; it < 400; ++it) {
      Rational a = random_rational(rng), a2 = random_rational(rng), b = random_rational(rng);
      Rational t = random_rational(rng);
      for (const auto& v : places) {
        CHECK(hilbert_symbol(a * a2, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a2, b, v));
        CHECK(hilbert_symbol(a, -a, v) == 1);
        CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
        CHECK(square_class(a * t * t, v) == square_class(a, v));
        CHECK(square_class(a, v) * square_class(b, v) == square_class(a * b, v));
      }
      std::set<long> ps = {2};
      for (const Integer& n : {Integer(a.get_num()), Integer(a.get_den()), Integer(b.get_num()), Integer(b.get_den())})
        for (long q : prime_divisors(n)) ps.insert(q);
      int prod = hilbert_symbol(a, b, Place::real());
      for (long q : ps) prod *= hilbert_symbol(a, b, Place::finite(q));
      CHECK(prod == 1);
    }
  }

  TEST_CASE("quadratic defect") {
    auto d = quadratic_defect(Rational(5), 2);
    REQUIRE_FALSE(d.is_zero());
    CHECK(d.exponent() == 2);
    CHECK(quadratic_defect(Rational(9), 2).is_zero());
    CHECK(quadratic_defect(Rational(3), 2).exponent() == 1);
    CHECK(quadratic_defect(Rational(2), 2).exponent() == 1);
    CHECK(quadratic_defect(Rational(3), 3).exponent() == 1);
    CHECK(quadratic_defect(Rational(2), 3).exponent() == 0);
    CHECK_THROWS_AS(QuadraticDefect::zero().exponent(), std::logic_error);
    CHECK_THROWS(quadratic_defect(Rational(0), 5));
  }

  TEST_CASE("quadratic defect matches minimal distance to a square") {
    // ord_2(a - x^2) over x, for units a mod 2^7
    for (long a = 1; a < 128; a += 2) {
      int best = 0;
      for (long x = 0; x < 1024; ++x) {
        long diff = oracle::md(a - x * x, 1L << 12);
        best = std::max(best, diff == 0 ? 12 : oracle::ord(diff, 2));
      }
      auto d = quadratic_defect(Rational(a), 2);
      if (best >= 7) {
        bool sq = a % 8 == 1;
        CHECK(d.is_zero() == sq);
      } else {
        REQUIRE_FALSE(d.is_zero());
        CHECK(d.exponent() == best);
      }
    }
  }

  TEST_CASE("defect is zero exactly on squares") {
    std::mt19937_64 rng(oracle::seed() + 1);
    for (int it = 0; it < 300; ++it) {
      Rational a = random_rational(rng);
      for (long p : {2L, 3L, 5L, 7L})
        CHECK(quadratic_defect(a, p).is_zero() == square_class(a, p).is_identity());
    }
  }

  TEST_CASE("units congruent to 1 mod p^(2e+1) are squares") {
    for (long p : {2L, 3L, 5L}) {
      int e = p == 2 ? 1 : 0;
      long q = oracle::pw(p, 2 * e + 1);
      for (long u = 1; u < 40 * q; u += q) CHECK(square_class(Rational(u), p).is_identity());
    }
  }

  TEST_CASE("legendre and p*") {
    CHECK(legendre(Integer(1), 7) == 1);
    CHECK(legendre(Integer(-1), 3) == -1);
    CHECK(legendre(Integer(2), 7) == 1);
    CHECK(legendre(Integer(14), 7) == 0);
    CHECK(p_star(5) == 5);
    CHECK(p_star(7) == -7);
    CHECK(p_star(3) == -3);
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L}) CHECK(oracle::md(p_star(p), 4) == 1);
  }
}
