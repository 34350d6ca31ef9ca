#include <doctest.h>

#include <random>

#include "qlat/matrix.hpp"
#include "qlat/rational.hpp"
#include "support/oracles.hpp"

using namespace qlat;

TEST_SUITE("core") {
  TEST_CASE("rational parsing") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(to_string(parse_rational("10/-4")) == "-5/2");
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  }

  TEST_CASE("valuations and residues") {
    CHECK(ord_p(Rational(12), 2) == 2);
    CHECK(ord_p(Rational(5, 18), 3) == -2);
    CHECK(pow_p(3, -2) == Rational(1, 9));
    CHECK(residue(Rational(1, 3), 2, 8) == 3);
    CHECK(unit_residue(Rational(-40), 2, 8) == 3);
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
  }

  TEST_CASE("matrix algebra") {
    Matrix a{{1, 2}, {3, 4}};
    CHECK(a.determinant() == -2);
    CHECK(a * a.inverse() == Matrix::identity(2));
    CHECK(a.transpose()(0, 1) == 3);
    CHECK(direct_sum(a, Matrix::diagonal({5})).rows() == 3);
    CHECK(a.to_string() == "[[1, 2], [3, 4]]");
    CHECK_THROWS_AS(Matrix({{1, 2}, {2, 4}}).inverse(), std::domain_error);
    CHECK(min_ord(Matrix{{Rational(1, 2), 0}, {0, 4}}, 2) == -1);
  }

  TEST_CASE("block splitting is a unimodular change of basis to block form") {
    std::mt19937_64 rng(oracle::seed());
    std::uniform_int_distribution<int> ent(-12, 12);
    for (long p : {2L, 3L, 5L}) {
      int done = 0;
      while (done < 60) {
        int n = 1 + static_cast<int>(rng() % 4);
        Matrix g(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) g(i, j) = g(j, i) = ent(rng);
        if (g.determinant() == 0) continue;
        ++done;
        auto bs = block_split(g, p);
        CHECK(congruent(g, bs.basis) == bs.form);
        CHECK(ord_p(bs.basis.determinant(), p) == 0);
        std::size_t off = 0;
        auto scales = bs.block_scales(p);
        for (std::size_t b = 0; b < bs.block_sizes.size(); ++b) {
          std::size_t sz = bs.block_sizes[b];
          CHECK((sz == 1 || (sz == 2 && p == 2)));
          for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
            for (std::size_t j = off; j < off + sz; ++j)
              if (i < off || i >= off + sz) CHECK(bs.form(i, j) == 0);
          if (b > 0) CHECK(scales[b] >= scales[b - 1]);
          off += sz;
        }
      }
    }
  }

  TEST_CASE("block splitting rejects singular input") {
    CHECK_THROWS(block_split(Matrix{{1, 1}, {1, 1}}, 3));
  }
}
