#include "qlat/reference_checks.hpp"

#include <algorithm>
#include <functional>

#include "qlat/dyadic_lattice.hpp"
#include "qlat/local_arith.hpp"
#include "qlat/nondyadic_lattice.hpp"
#include "qlat/quad_field.hpp"
#include "qlat/quad_space.hpp"
#include "qlat/rep_oracle.hpp"

namespace qlat {

std::vector<MinimalityWitness> rank_one_minimality_witnesses(long p) {
  const Rational d(delta(p)), pi(p), one(1);
  return {{{d, -pi, d * pi}, 0}, {{one, pi, -d * pi}, 1}, {{-one, d, d * pi}, 2}, {{one, -d, pi}, 3}};
}

namespace {

class Suite {
 public:
  void check(const std::string& topic, const std::string& claim, const std::function<bool()>& fn) {
    ReferenceCheck c{topic, claim, false, ""};
    try {
      c.passed = fn();
      if (!c.passed) c.detail = "claim does not hold";
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    out.push_back(std::move(c));
  }
  std::vector<ReferenceCheck> out;
};

OracleConfig at(long p, std::optional<int> precision = std::nullopt) {
  OracleConfig cfg;
  cfg.p = p;
  cfg.precision = precision;
  return cfg;
}

Answer rep(const Matrix& L, const Matrix& M, long p, std::optional<int> precision = std::nullopt) {
  return represents_lattice(L, M, at(p, precision)).answer;
}

Matrix diag(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return Matrix::diagonal(v);
}

bool field_has_no_extension(long m) { return unramified_quadratic_extensions(profile(m)).empty(); }

}  // namespace

std::vector<ReferenceCheck> run_reference_checks() {
  Suite s;
  const Place two = Place::finite(2), three = Place::finite(3);

  s.check("local units", "the dyadic non-square unit has defect 4Z_2", [] {
    auto d = quadratic_defect(Rational(local_unit_data(2).delta), 2);
    return !d.is_zero() && d.exponent() == 2;
  });
  s.check("local units", "7* = -7", [] { return p_star(7) == -7; });

  s.check("local spaces", "[1, 1, 3, 3] is anisotropic at 3",
          [&] { return !is_isotropic(inv_of_diagonal({1, 1, 3, 3}, three)); });
  s.check("local spaces", "H + H at 2 is 2-universal",
          [&] { return space_k_universal(orthogonal_sum(hyperbolic_plane(two), hyperbolic_plane(two)), 2); });
  s.check("local spaces", "[1, -1, -1, -1] at 3 is not 2-universal",
          [&] { return !space_k_universal(inv_of_diagonal({1, -1, -1, -1}, three), 2); });
  s.check("local spaces", "every space of dimension k+3 is k-universal", [] {
    for (long p : {2L, 3L, 5L})
      for (int k = 1; k <= 3; ++k)
        for (const auto& v : enumerate_spaces(Place::finite(p), k + 3))
          if (!space_k_universal(v, k)) return false;
    return true;
  });
  s.check("local spaces", "H and lines have no sibling space",
          [&] { return !sibling_space(hyperbolic_plane(three)) && !sibling_space(inv_of_diagonal({3}, three)); });
  s.check("local spaces", "7 binary spaces at 3 and 15 at 2",
          [&] { return enumerate_spaces(three, 2).size() == 7 && enumerate_spaces(two, 2).size() == 15; });

  s.check("odd testing sets", "sizes 4 (p=3,k=1), 7 (p=5,k=2), 8 of rank 4 (p=3,k=4)", [] {
    auto t4 = testing_set_models(3, 4);
    return testing_set_models(3, 1).size() == 4 && testing_set_models(5, 2).size() == 7 && t4.size() == 8 &&
           std::all_of(t4.begin(), t4.end(), [](const auto& m) { return m.size() == 4; });
  });
  s.check("odd testing sets", "each rank-one testing lattice is needed (p = 3, 5)", [] {
    for (long p : {3L, 5L}) {
      auto models = testing_set_models(p, 1);
      for (const auto& w : rank_one_minimality_witnesses(p)) {
        Matrix M = Matrix::diagonal(w.diag);
        for (std::size_t i = 0; i < models.size(); ++i) {
          Answer want = i == w.missing ? Answer::no : Answer::yes;
          if (rep(Matrix::diagonal(models[i]), M, p) != want) return false;
        }
      }
    }
    return true;
  });
  s.check("odd testing sets", "<D, -3, 3D> fails exactly <1> at 3 via the testing path", [] {
    auto v = is_k_universal_via_testing(diag({-1, -3, -3}), 3, 1);
    return !v.universal && v.failing_index == std::size_t{0};
  });
  s.check("odd testing sets", "<1, 3, -3D> fails <D> at 3 via the testing path", [] {
    auto v = is_k_universal_via_testing(diag({1, 3, 3}), 3, 1);
    return !v.universal && v.failing_index == std::size_t{1};
  });
  s.check("odd testing sets", "<D, -3, 3D> does not represent 1 at 3",
          [] { return represents_value(diag({-1, -3, -3}), 1, at(3)).answer == Answer::no; });

  s.check("odd 2-universality", "unimodular rank 5 is 2-universal",
          [] { return is_k_universal(make_jordan(3, {{0, 5, false}}), 2); });
  s.check("odd 2-universality", "unimodular rank 3 plus p-modular rank 2 is 2-universal",
          [] { return is_k_universal(parse_jordan("0:3:1,1:2:D", 3), 2); });
  s.check("odd 2-universality", "unimodular rank 4 with det D alone is not 2-universal",
          [] { return !is_k_universal(parse_jordan("0:4:D", 5), 2); });

  s.check("odd maximal plane", "<3, -3D> at 3 is one 3-modular block of det class -D, anisotropic", [] {
    auto L = maximal_binary_anisotropic(3);
    bool minus_d_nonsquare = legendre(Integer(-delta(3)), 3) == -1;
    return L.blocks.size() == 1 && L.blocks[0].scale_exp == 1 && L.blocks[0].rank == 2 &&
           L.blocks[0].nonsquare_det == minus_d_nonsquare && !is_isotropic(space_of(L));
  });
  s.check("odd maximal plane", "diag(3, 3) is maximal at 3", [] { return maximality_scan(diag({3, 3}), 3); });

  s.check("dyadic scale and norm", "2^-1 A(2, 2rho) has scale 2^-1 and norm Z_2", [] {
    auto sn = scale_norm(anisotropic_half_plane());
    return sn.scale_exp == -1 && sn.norm_exp == 0;
  });
  s.check("dyadic twist symbol", "(1 - 2s, 1 - 4 rho s^-1 / 2)_2 = -1 for s = 1, 3, 5, 7", [] {
    for (long sg : {1L, 3L, 5L, 7L})
      if (twist_hilbert_symbol(1, sg) != -1) return false;
    return true;
  });
  s.check("dyadic maximal binaries", "type IV is 2^-1 A(0,0), twisted type III is A(2, 2rho)", [] {
    MaximalBinaryDescriptor iv, iii;
    iii.type = MaximalType::III;
    iii.twisted = true;
    DyadicLattice a22{{PlaneComponent{1, 2, 2 * local_unit_data(2).rho}}};
    return gram_of(materialize(iv)) == gram_of(half_hyperbolic_plane()) && gram_of(materialize(iii)) == gram_of(a22);
  });
  s.check("dyadic maximal binaries", "anisotropic maximal binaries are maximal", [] {
    for (const auto& d : maximal_binary_list(1)) {
      Matrix g = gram_of(materialize(d));
      if (is_isotropic(inv_of_gram(g, Place::finite(2)))) continue;
      if (!maximality_scan(g, 2)) return false;
    }
    return true;
  });
  s.check("dyadic testing set", "contains 2^-1 A(0,0) and <1, 2s> for s = 1, 3, 5, 7", [] {
    auto ts = testing_set_2_universal(1);
    auto has = [&](const DyadicLattice& L) {
      return std::any_of(ts.begin(), ts.end(), [&](const auto& x) { return gram_of(x) == gram_of(L); });
    };
    if (!has(half_hyperbolic_plane())) return false;
    for (long sg : {1L, 3L, 5L, 7L})
      if (!has(DyadicLattice{{DiagComponent{1}, DiagComponent{Rational(2 * sg)}}})) return false;
    return true;
  });
  s.check("dyadic 2-universality", "2^-1 A(0,0) + 2^-1 A(0,0) satisfies the quaternary criterion",
          [] { return is_2_universal_quaternary(direct_sum(half_hyperbolic_plane(), half_hyperbolic_plane())); });
  s.check("dyadic 2-universality", "2^-1 A(0,0) + 2^-1 A(0,0) represents every testing lattice", [] {
    Matrix M = gram_of(direct_sum(half_hyperbolic_plane(), half_hyperbolic_plane()));
    for (const auto& L : testing_set_2_universal(1))
      if (rep(gram_of(L), M, 2, 8) != Answer::yes) return false;
    return true;
  });
  s.check("dyadic 2-universality", "2^-1 A(0,0) + <2, 2> misses 2^-1 A(2, 2rho)", [] {
    DyadicLattice N{{DiagComponent{2}, DiagComponent{2}}};
    Matrix M = gram_of(direct_sum(half_hyperbolic_plane(), N));
    return excludes_anisotropic_half_plane(N) && rep(gram_of(anisotropic_half_plane()), M, 2, 7) == Answer::no;
  });
  s.check("dyadic classic quaternaries", "A(1,0) + A(2,0) misses A(2, 2rho)", [] {
    Matrix M = gram_of(parse_blocks("p:1:1:0;p:1:2:0"));
    Matrix L = gram_of(DyadicLattice{{PlaneComponent{1, 2, 2 * local_unit_data(2).rho}}});
    return !classic_2_universal_quaternary_exists() && rep(L, M, 2, 7) == Answer::no;
  });

  s.check("quadratic fields", "Q(sqrt -14): d_F = -56, odd ramified [7], p* [-7], 2 ramified", [] {
    auto P = profile(-14);
    return P.d_F == -56 && P.odd_ramified == std::vector<long>{7} && P.p_stars == std::vector<long>{-7} &&
           P.dyadic == DyadicBehavior::ramified;
  });
  s.check("quadratic fields", "Q(sqrt -1): d_F = -4, no odd ramified primes, 2 ramified", [] {
    auto P = profile(-1);
    return P.d_F == -4 && P.odd_ramified.empty() && P.dyadic == DyadicBehavior::ramified;
  });
  s.check("quadratic fields", "Q(sqrt -14) has the single extension class -7, also represented by 2", [] {
    auto P = profile(-14);
    return unramified_quadratic_extensions(P) == std::vector<long>{-7} && canonical_extension_class(2, P) == -7;
  });
  s.check("quadratic fields", "Q(sqrt -5) has even class number and a 2-LNG lattice", [] {
    auto P = profile(-5);
    return class_number_even(P) && admits_2_lng(P);
  });
  s.check("quadratic fields", "Q(sqrt 2), Q(sqrt -1), Q(sqrt -2) have no unramified quadratic extension",
          [] { return field_has_no_extension(2) && field_has_no_extension(-1) && field_has_no_extension(-2); });
  s.check("quadratic fields", "classic 1-LNG: Q(sqrt -14) yes, Q(sqrt -5) no, Q(sqrt -1) no", [] {
    return admits_classic_1_lng(profile(-14)) && !admits_classic_1_lng(profile(-5)) &&
           !admits_classic_1_lng(profile(-1));
  });
  s.check("quadratic fields", "-7 is a square at the dyadic prime of Q(sqrt -14)",
          [] { return splits_completely_at_dyadic(-7, profile(-14)); });
  s.check("no classic 1-LNG table", "lists Q(sqrt -5) and Q(sqrt 65), not Q(sqrt -14)", [] {
    return in_no_classic_1_lng_table(profile(-5)) && in_no_classic_1_lng_table(profile(65)) &&
           !in_no_classic_1_lng_table(profile(-14));
  });
  s.check("no classic 1-LNG table", "rows for m = -14 and m = 2 agree with first principles", [] {
    auto a = atlas_row(-14), b = atlas_row(2);
    return a.consistent && a.lng1_first_principles && b.consistent && !b.lng1_first_principles;
  });
  return s.out;
}

}  // namespace qlat
