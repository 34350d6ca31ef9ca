#include "qlat/rational.hpp"

#include <stdexcept>

namespace qlat {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  trim(num);
  trim(den);
  if (num.empty() || den.empty() || !valid_int(num) || !valid_int(den))
    throw std::invalid_argument("malformed rational: " + s);
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int ord_p(const Integer& a, long p) {
  if (a == 0) throw std::invalid_argument("ord_p of zero");
  Integer x = abs(a);
  Integer pp = p;
  int v = 0;
  while (mpz_divisible_p(x.get_mpz_t(), pp.get_mpz_t())) {
    x /= pp;
    ++v;
  }
  return v;
}

int ord_p(const Rational& a, long p) {
  if (a == 0) throw std::invalid_argument("ord_p of zero");
  return ord_p(Integer(a.get_num()), p) - ord_p(Integer(a.get_den()), p);
}

Rational pow_p(long p, int e) {
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), q) : Rational(q);
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::int64_t residue(const Rational& a, long p, std::int64_t modulus) {
  if (a == 0) return 0;
  if (ord_p(a, p) < 0) throw std::domain_error("residue of non-integral value");
  Integer m = static_cast<long>(modulus);
  Integer den = a.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
    if (modulus == 1) return 0;
    throw std::domain_error("denominator not invertible");
  }
  Integer r = Integer(a.get_num()) * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

std::int64_t unit_residue(const Rational& a, long p, std::int64_t modulus) {
  return residue(a / pow_p(p, ord_p(a, p)), p, modulus);
}

}  // namespace qlat
