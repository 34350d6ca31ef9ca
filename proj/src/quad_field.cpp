#include "qlat/quad_field.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>

#include "qlat/local_arith.hpp"

namespace qlat {

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

bool is_square_at_2(long c) { return square_class(Rational(c), 2).is_identity(); }

std::set<long> p_star_products(const QuadFieldProfile& P) {
  std::set<long> out;
  std::size_t t = P.p_stars.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << t); ++mask) {
    long c = 1;
    for (std::size_t i = 0; i < t; ++i)
      if (mask >> i & 1) c *= P.p_stars[i];
    out.insert(c);
  }
  return out;
}

bool better_rep(long a, long b) {
  long aa = std::labs(a), ab = std::labs(b);
  if (aa != ab) return aa < ab;
  return a > b;
}

unsigned worker_count() {
  if (const char* env = std::getenv("QLAT_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::string to_string(DyadicBehavior b) {
  switch (b) {
    case DyadicBehavior::split: return "split";
    case DyadicBehavior::inert: return "inert";
    case DyadicBehavior::ramified: return "ramified";
  }
  return "?";
}

bool is_squarefree(long m) {
  if (m == 0) return false;
  unsigned long n = static_cast<unsigned long>(std::labs(m));
  for (unsigned long q = 2; q * q <= n; ++q)
    if (n % (q * q) == 0) return false;
  return true;
}

long squarefree_part(long n) {
  if (n == 0) throw std::invalid_argument("squarefree part of zero");
  long sign = n < 0 ? -1 : 1;
  long a = std::labs(n), out = 1;
  for (long q = 2; q * q <= a; ++q) {
    int e = 0;
    while (a % q == 0) {
      a /= q;
      ++e;
    }
    if (e % 2) out *= q;
  }
  return sign * out * a;
}

QuadFieldProfile profile(long m) {
  if (m == 0 || m == 1) throw std::invalid_argument("radicand must not be 0 or 1");
  if (!is_squarefree(m)) throw std::invalid_argument("radicand must be squarefree: " + std::to_string(m));
  QuadFieldProfile P;
  P.m = m;
  P.d_F = mod(m, 4) == 1 ? m : 4 * m;
  P.is_real = m > 0;
  long a = std::labs(m);
  if (a % 2 == 0) a /= 2;
  for (long q = 3; q * q <= a; q += 2) {
    if (a % q != 0) continue;
    P.odd_ramified.push_back(q);
    a /= q;
  }
  if (a > 1) P.odd_ramified.push_back(a);
  for (long q : P.odd_ramified) P.p_stars.push_back(p_star(q));
  if (mod(P.d_F, 4) == 0)
    P.dyadic = DyadicBehavior::ramified;
  else
    P.dyadic = mod(P.d_F, 8) == 1 ? DyadicBehavior::split : DyadicBehavior::inert;
  return P;
}

long canonical_extension_class(long c, const QuadFieldProfile& P) {
  long a = squarefree_part(c);
  long b = squarefree_part(a * P.m);
  auto S = p_star_products(P);
  bool ia = S.count(a) > 0, ib = S.count(b) > 0;
  if (ia != ib) return ia ? a : b;
  return better_rep(a, b) ? a : b;
}

std::vector<long> unramified_quadratic_extensions(const QuadFieldProfile& P) {
  std::set<long> reps;
  for (long c : p_star_products(P)) {
    if (c == P.m) continue;
    long partner = squarefree_part(c * P.m);
    if (P.is_real && c < 0 && partner < 0) continue;
    reps.insert(canonical_extension_class(c, P));
  }
  std::vector<long> out(reps.begin(), reps.end());
  std::sort(out.begin(), out.end(), better_rep);
  return out;
}

bool class_number_even(const QuadFieldProfile& P) { return !unramified_quadratic_extensions(P).empty(); }

bool admits_2_lng(const QuadFieldProfile& P) { return class_number_even(P); }

bool splits_completely_at_dyadic(long c, const QuadFieldProfile& P) {
  auto ext = unramified_quadratic_extensions(P);
  long rep = canonical_extension_class(c, P);
  if (std::find(ext.begin(), ext.end(), rep) == ext.end())
    throw std::invalid_argument("not an unramified quadratic extension class: " + std::to_string(c));
  if (is_square_at_2(c)) return true;
  if (P.dyadic == DyadicBehavior::split) return false;
  return is_square_at_2(squarefree_part(c * P.m));
}

bool admits_classic_1_lng(const QuadFieldProfile& P) {
  for (long c : unramified_quadratic_extensions(P))
    if (splits_completely_at_dyadic(c, P)) return true;
  return false;
}

bool in_no_classic_1_lng_table(const QuadFieldProfile& P) {
  std::vector<long> r;
  for (long p : P.odd_ramified) r.push_back(p % 8);
  std::sort(r.begin(), r.end());
  const std::size_t t = r.size();
  const bool twice = P.m % 2 == 0;
  auto has = [&](std::initializer_list<long> want) {
    std::vector<long> w(want);
    std::sort(w.begin(), w.end());
    return r == w;
  };
  auto mod4 = [](long x) { return x % 4; };

  if (mod(P.d_F, 4) == 1) {
    if (t == 1) return true;
    if (P.is_real && t == 2)
      return (mod4(r[0]) == 3 && mod4(r[1]) == 3) || (r[0] == 5 && r[1] == 5);
    if (!P.is_real && t == 2) return has({3, 5});
    if (P.is_real && t == 3) return has({3, 5, 7});
    return false;
  }

  if (t == 0) return P.m == 2 || P.m == -1 || P.m == -2;
  if (P.is_real) {
    if (!twice && t == 1) return mod4(r[0]) == 3;
    if (twice && t == 1) return r[0] == 3 || r[0] == 5 || r[0] == 7;
    if (t == 2) {
      bool five_and_three_mod4 = (r[0] == 5 && mod4(r[1]) == 3) || (r[1] == 5 && mod4(r[0]) == 3);
      if (five_and_three_mod4) return true;
      if (twice && has({3, 7})) return true;
    }
    return false;
  }
  if (!twice && t == 1) return r[0] == 5;
  if (twice && t == 1) return r[0] == 3 || r[0] == 5;
  return false;
}

AtlasRow atlas_row(long m) {
  AtlasRow row;
  row.profile = profile(m);
  row.extensions = unramified_quadratic_extensions(row.profile);
  row.h_even = !row.extensions.empty();
  row.lng2 = row.h_even;
  row.lng1_first_principles = admits_classic_1_lng(row.profile);
  row.lng1_table = !in_no_classic_1_lng_table(row.profile);
  row.consistent = row.lng1_first_principles == row.lng1_table;
  return row;
}

std::vector<AtlasRow> atlas(long max_abs) {
  if (max_abs < 2) throw std::invalid_argument("atlas range must be at least 2");
  std::vector<long> ms;
  for (long a = 2; a <= max_abs; ++a)
    for (long m : {-a, a})
      if (is_squarefree(m)) ms.push_back(m);

  std::vector<AtlasRow> rows(ms.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < ms.size();) rows[i] = atlas_row(ms[i]);
  };
  unsigned n = std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<std::size_t>(1, ms.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace qlat
