#pragma once

// Brute-force reference computations, independent of the library code paths.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

inline std::uint64_t seed() {
  if (const char* s = std::getenv("QLAT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261015;
}

inline std::int64_t pw(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::int64_t md(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

inline int ord(std::int64_t a, std::int64_t p) {
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

/// Squarefree-style reduction: p^(v mod 2) * (unit part mod p^n).
inline std::int64_t reduce(std::int64_t a, std::int64_t p, int n) {
  int v = ord(a, p);
  std::int64_t u = a / pw(p, v);
  return (v % 2 ? p : 1) * md(u, pw(p, n));
}

/// (a, b)_p by searching primitive solutions of a x^2 + b y^2 = z^2 mod p^n.
inline int hilbert(std::int64_t a, std::int64_t b, std::int64_t p) {
  int n = p == 2 ? 6 : 3;
  std::int64_t q = pw(p, n);
  a = reduce(a, p, n);
  b = reduce(b, p, n);
  for (std::int64_t x = 0; x < q; ++x)
    for (std::int64_t y = 0; y < q; ++y)
      for (std::int64_t z = 0; z < q; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (md(a * x * x + b * y * y - z * z, q) == 0) return 1;
      }
  return -1;
}

/// Real-place symbol.
inline int hilbert_real(std::int64_t a, std::int64_t b) { return a < 0 && b < 0 ? -1 : 1; }

/// Iterates every vector in (Z/q)^n.
template <class F>
bool any_vector(int n, std::int64_t q, F&& f) {
  std::vector<std::int64_t> x(n, 0);
  while (true) {
    if (f(x)) return true;
    int i = 0;
    while (i < n && ++x[i] == q) x[i++] = 0;
    if (i == n) return false;
  }
}

/// Isotropy of a diagonal form with integer entries of valuation <= 1: a
/// primitive zero modulo p^n (n = 2, or 5-6 at p = 2).
inline bool isotropic_diagonal(const std::vector<std::int64_t>& a, std::int64_t p) {
  int n = p == 2 ? (a.size() >= 4 ? 5 : 6) : 2;
  std::int64_t q = pw(p, n);
  return any_vector(static_cast<int>(a.size()), q, [&](const std::vector<std::int64_t>& x) {
    bool prim = false;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      prim = prim || x[i] % p != 0;
      s += a[i] * x[i] * x[i];
    }
    return prim && md(s, q) == 0;
  });
}

/// Representation of a by the integer Gram matrix g over Z_p: true when some
/// x mod p^n solves Q(x) = a with a Hensel certificate, false when no x solves
/// it mod p^n, empty otherwise.
inline std::optional<bool> represents_value(const std::vector<std::vector<std::int64_t>>& g, std::int64_t a,
                                            std::int64_t p, int n) {
  std::int64_t q = pw(p, n);
  bool any = false, certified = false;
  int dim = static_cast<int>(g.size());
  any_vector(dim, q, [&](const std::vector<std::int64_t>& x) {
    std::int64_t s = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) s += g[i][j] * x[i] * x[j];
    if (md(s - a, q) != 0) return false;
    any = true;
    int t = 1 << 20;
    for (int i = 0; i < dim; ++i) {
      std::int64_t d = 0;
      for (int j = 0; j < dim; ++j) d += 2 * g[i][j] * x[j];
      if (md(d, q) != 0) t = std::min(t, ord(md(d, q), p));
    }
    if (2 * t + 1 <= n) certified = true;
    return certified;
  });
  if (certified) return true;
  if (!any) return false;
  return std::nullopt;
}

/// Class number of the imaginary quadratic order of discriminant d < 0 by
/// counting reduced forms.
inline int class_number_imaginary(std::int64_t d) {
  int h = 0;
  for (std::int64_t a = 1; 3 * a * a <= -d; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b - d;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      std::int64_t g = std::gcd(std::gcd(std::abs(b), a), c);
      if (g == 1) ++h;
    }
  return h;
}

}  // namespace oracle
