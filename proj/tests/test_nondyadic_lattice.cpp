#include <doctest.h>

#include <random>

#include "qlat/local_arith.hpp"
#include "qlat/nondyadic_lattice.hpp"
#include "qlat/reference_checks.hpp"
#include "support/families.hpp"
#include "support/oracles.hpp"

using namespace qlat;

namespace {

bool oracle_yes(const Matrix& l, const Matrix& m, long p) {
  OracleConfig c;
  c.p = p;
  auto r = represents_lattice(l, m, c);
  REQUIRE(r.answer != Answer::undecided);
  return r.answer == Answer::yes;
}

}  // namespace

TEST_SUITE("nondyadic_lattice") {
  TEST_CASE("Jordan data from Gram matrices") {
    auto a = jordan_from_gram(Matrix::diagonal({1, -1, -3}), 3);
    REQUIRE(a.blocks.size() == 2);
    CHECK(a.blocks[0] == JordanBlock{0, 2, true});
    CHECK(a.blocks[1] == JordanBlock{1, 1, true});
    CHECK(jordan_from_gram(Matrix::diagonal({1}), 7).blocks == std::vector<JordanBlock>{{0, 1, false}});
    auto h = jordan_from_gram(Matrix{{0, 1}, {1, 0}}, 5);
    CHECK(h.blocks == std::vector<JordanBlock>{{0, 2, false}});
    CHECK_THROWS(jordan_from_gram(Matrix{{1, 2}, {2, 4}}, 3));
  }

  TEST_CASE("Jordan data round-trips through the diagonal model") {
    for (long p : {3L, 5L})
      for (const auto& L : family::jordan_lattices(p, 4)) CHECK(jordan_from_gram(gram_of(L), p) == L);
  }

  TEST_CASE("validation") {
    CHECK_THROWS(make_jordan(3, {{1, 1, false}, {0, 1, false}}));
    CHECK_THROWS(make_jordan(3, {{0, 0, false}}));
    CHECK_THROWS(make_jordan(3, {}));
    CHECK_THROWS(make_jordan(2, {{0, 1, false}}));
    CHECK_THROWS(make_jordan(9, {{0, 1, false}}));
  }

  TEST_CASE("spaces of Jordan lattices") {
    const Place p3 = Place::finite(3);
    CHECK(isometric(space_of(make_jordan(3, {{0, 1, false}})), inv_of_diagonal({1}, p3)));
    CHECK(isometric(space_of(jordan_from_gram(Matrix::diagonal({1, -1}), 3)), hyperbolic_plane(p3)));
    auto s = space_of(jordan_from_gram(Matrix::diagonal({3, 3}), 3));
    CHECK(s.dim == 2);
    CHECK(s.det.is_identity());
    CHECK(s.hasse == hilbert_symbol(Rational(3), Rational(3), p3));
  }

  TEST_CASE("testing sets") {
    CHECK(testing_set(3, 1).size() == 4);
    CHECK(testing_set(5, 2).size() == 7);
    auto t = testing_set(3, 4);
    CHECK(t.size() == 8);
    for (const auto& L : t) CHECK(L.rank() == 4);
    CHECK_THROWS(testing_set(3, 0));
    CHECK_THROWS(testing_set_models(2, 1));
  }

  TEST_CASE("binary testing set covers each binary space once") {
    for (long p : {3L, 5L}) {
      std::vector<SpaceInv> seen;
      for (const auto& L : testing_set(p, 2)) {
        auto v = space_of(L);
        for (const auto& w : seen) CHECK_FALSE(isometric(v, w));
        seen.push_back(v);
      }
      CHECK(seen.size() == enumerate_spaces(Place::finite(p), 2).size());
    }
  }

  TEST_CASE("structural criterion examples") {
    CHECK(is_k_universal(make_jordan(3, {{0, 5, false}}), 2));
    CHECK(is_k_universal(make_jordan(3, {{0, 5, true}}), 2));
    CHECK(is_k_universal(parse_jordan("0:3:1,1:2:D", 3), 2));
    CHECK_FALSE(is_k_universal(parse_jordan("0:3:1,2:2:1", 3), 2));
    CHECK_FALSE(is_k_universal(parse_jordan("0:4:D", 5), 2));
    CHECK_FALSE(is_k_universal(parse_jordan("1:6:1", 5), 2));
    CHECK_THROWS(k_universal_criterion(make_jordan(3, {{0, 3, false}}), 1));
    CHECK_THROWS_AS(k_universal_criterion(make_jordan(3, {{-1, 3, false}}), 2), std::domain_error);
  }

  TEST_CASE("structural criterion agrees with the testing set on a sample") {
    std::mt19937_64 rng(oracle::seed());
    for (long p : {3L, 5L}) {
      auto all = family::jordan_lattices(p, 6);
      for (int it = 0; it < 25; ++it) {
        const auto& L = all[rng() % all.size()];
        CAPTURE(format_jordan(L));
        CHECK(is_k_universal(L, 2) == is_k_universal_via_testing(L, 2).universal);
      }
    }
  }

  TEST_CASE("k-universal implies (k-1)-universal") {
    for (long p : {3L, 5L})
      for (const auto& L : family::jordan_lattices(p, 8))
        for (int k : {3, 4})
          if (is_k_universal(L, k)) CHECK(is_k_universal(L, k - 1));
  }

  TEST_CASE("testing path examples") {
    auto a = is_k_universal_via_testing(Matrix::diagonal({-1, -3, -3}), 3, 1);
    CHECK_FALSE(a.universal);
    CHECK(a.failing_index == std::size_t{0});
    auto b = is_k_universal_via_testing(Matrix::diagonal({1, 3, 3}), 3, 1);
    CHECK_FALSE(b.universal);
    REQUIRE(b.failing_index.has_value());
    CHECK(b.failing_model == std::vector<Rational>{Rational(delta(3))});
    CHECK(is_k_universal_via_testing(Matrix::diagonal({1, 1, 1, 1, 1}), 3, 2).universal);
  }

  TEST_CASE("rank-one testing set is minimal") {
    for (long p : {3L, 5L}) {
      auto models = testing_set_models(p, 1);
      for (const auto& w : rank_one_minimality_witnesses(p))
        for (std::size_t i = 0; i < models.size(); ++i)
          CHECK(oracle_yes(Matrix::diagonal(models[i]), Matrix::diagonal(w.diag), p) == (i != w.missing));
    }
  }

  TEST_CASE("binary testing set is minimal at 3") {
    const long p = 3;
    auto models = testing_set_models(p, 2);
    std::vector<Rational> classes = {1, Rational(delta(p)), Rational(p), Rational(delta(p) * p)};
    std::vector<std::vector<Rational>> candidates;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a; b < 4; ++b)
        for (std::size_t c = b; c < 4; ++c)
          for (std::size_t d = c; d < 4; ++d) candidates.push_back({classes[a], classes[b], classes[c], classes[d]});
    for (std::size_t t = 0; t < models.size(); ++t) {
      bool found = false;
      for (const auto& cand : candidates) {
        Matrix m = Matrix::diagonal(cand);
        if (oracle_yes(Matrix::diagonal(models[t]), m, p)) continue;
        bool rest = true;
        for (std::size_t i = 0; i < models.size() && rest; ++i)
          if (i != t) rest = oracle_yes(Matrix::diagonal(models[i]), m, p);
        if (rest) {
          found = true;
          break;
        }
      }
      CAPTURE(t);
      CHECK(found);
    }
  }

  TEST_CASE("unimodular blocks are classified by rank and determinant") {
    for (long p : {3L, 5L}) {
      Rational d(delta(p));
      for (int r = 1; r <= 4; ++r) {
        std::vector<Rational> a(r, Rational(1)), b(r, Rational(1)), c(r, Rational(1));
        a.back() = d;
        if (r >= 3) {
          b[r - 3] = d;
          b[r - 2] = d;
          b[r - 1] = d;
        } else {
          b.back() = d * 4;
        }
        c[0] = -1;
        Matrix ma = Matrix::diagonal(a), mb = Matrix::diagonal(b), mc = Matrix::diagonal(c);
        CHECK(oracle_yes(ma, mb, p));
        CHECK(oracle_yes(mb, ma, p));
        bool same_det = square_class(ma.determinant(), p) == square_class(mc.determinant(), p);
        CHECK(oracle_yes(mc, ma, p) == same_det);
        CHECK((jordan_from_gram(ma, p) == jordan_from_gram(mc, p)) == same_det);
      }
    }
  }

  TEST_CASE("maximal anisotropic plane") {
    auto L = maximal_binary_anisotropic(3);
    REQUIRE(L.blocks.size() == 1);
    CHECK(L.blocks[0].scale_exp == 1);
    CHECK(L.blocks[0].rank == 2);
    CHECK_FALSE(is_isotropic(space_of(L)));
    for (long p : {3L, 5L, 7L}) CHECK(maximality_scan(gram_of(maximal_binary_anisotropic(p)), p));
  }

  TEST_CASE("descriptor parsing") {
    for (const auto& L : family::jordan_lattices(5, 3)) CHECK(parse_jordan(format_jordan(L), 5) == L);
    CHECK_THROWS(parse_jordan("0:3", 3));
    CHECK_THROWS(parse_jordan("0:3:X", 3));
    CHECK_THROWS(parse_jordan("a:3:1", 3));
    CHECK_THROWS(parse_jordan("1:2:1,0:1:1", 3));
  }

  TEST_CASE("abstract rings use the structural path only") {
    auto L = make_abstract_jordan(9, {{0, 3, false}, {1, 2, true}});
    CHECK(is_k_universal(L, 2));
    CHECK_THROWS(is_k_universal_via_testing(L, 2));
    CHECK_THROWS(make_abstract_jordan(6, {{0, 1, false}}));
  }

  TEST_CASE("insufficient precision surfaces as undecided") {
    OracleConfig c;
    c.precision = 1;
    CHECK_THROWS_AS(is_k_universal_via_testing(Matrix::diagonal({1, 1, 1, 3, 3}), 3, 2, c), UndecidedError);
  }
}
