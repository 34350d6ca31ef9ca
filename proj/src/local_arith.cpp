#include "qlat/local_arith.hpp"

#include <stdexcept>

#ifndef QLAT_DYADIC_DELTA
#define QLAT_DYADIC_DELTA 5
#endif

namespace qlat {

Place Place::finite(long p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  return Place(p);
}

std::string Place::to_string() const { return is_real() ? "real" : "p=" + std::to_string(p_); }

int legendre(const Integer& a, long p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre needs an odd prime");
  Integer pp = p;
  return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

long delta(long p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  if (p == 2) return QLAT_DYADIC_DELTA;
  for (long d = 2;; ++d)
    if (legendre(Integer(d), p) == -1) return d;
}

LocalUnitData local_unit_data(long p) {
  long d = delta(p);
  LocalUnitData data{p, p == 2 ? 1 : 0, p, d, Rational(0)};
  if (p == 2) {
    data.rho = Rational(1 - d, 4);
    data.rho.canonicalize();
  }
  return data;
}

long p_star(long p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("p_star needs an odd prime");
  return p % 4 == 1 ? p : -p;
}

namespace {

int parity(int v) { return ((v % 2) + 2) % 2; }

void require_same_place(const SquareClass& a, const SquareClass& b) {
  if (!(a.place == b.place)) throw std::invalid_argument("square classes at different places");
}

}  // namespace

bool SquareClass::is_identity() const {
  if (place.is_real()) return u == 0;
  return v == 0 && u == (place.is_dyadic() ? 1 : 0);
}

Integer SquareClass::representative() const {
  if (place.is_real()) return u ? -1 : 1;
  long p = place.prime();
  Integer unit = place.is_dyadic() ? Integer(u) : Integer(u ? delta(p) : 1);
  return v ? unit * p : unit;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
  require_same_place(*this, o);
  SquareClass r{place, v ^ o.v, 0};
  if (place.is_real())
    r.u = u ^ o.u;
  else if (place.is_dyadic())
    r.u = (u * o.u) % 8;
  else
    r.u = u ^ o.u;
  return r;
}

std::string SquareClass::to_string() const { return representative().get_str(); }

std::vector<SquareClass> SquareClass::all(const Place& place) {
  std::vector<SquareClass> out;
  if (place.is_real()) {
    out.push_back({place, 0, 0});
    out.push_back({place, 0, 1});
    return out;
  }
  for (int v : {0, 1}) {
    if (place.is_dyadic())
      for (int u : {1, 3, 5, 7}) out.push_back({place, v, u});
    else
      for (int u : {0, 1}) out.push_back({place, v, u});
  }
  return out;
}

SquareClass square_class(const Rational& a, const Place& place) {
  if (a == 0) throw std::invalid_argument("square class of zero");
  if (place.is_real()) return {place, 0, a < 0 ? 1 : 0};
  long p = place.prime();
  int v = ord_p(a, p);
  if (p == 2) return {place, parity(v), static_cast<int>(unit_residue(a, 2, 8))};
  Integer r = static_cast<long>(unit_residue(a, p, p));
  return {place, parity(v), legendre(r, p) == -1 ? 1 : 0};
}

int hilbert_symbol(const SquareClass& a, const SquareClass& b) {
  require_same_place(a, b);
  if (a.place.is_real()) return (a.u && b.u) ? -1 : 1;
  long p = a.place.prime();
  if (p == 2) {
    auto eps = [](int u) { return ((u - 1) / 2) & 1; };
    auto omega = [](int u) { return ((u * u - 1) / 8) & 1; };
    int e = eps(a.u) * eps(b.u) + a.v * omega(b.u) + b.v * omega(a.u);
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  if (a.v && b.v && ((p - 1) / 2) % 2 == 1) s = -s;
  if (b.v && a.u) s = -s;
  if (a.v && b.u) s = -s;
  return s;
}

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  return hilbert_symbol(square_class(a, v), square_class(b, v));
}

int QuadraticDefect::exponent() const {
  if (!exp_) throw std::logic_error("zero ideal has no exponent");
  return *exp_;
}

std::string QuadraticDefect::to_string() const {
  return exp_ ? "p^" + std::to_string(*exp_) : "0";
}

QuadraticDefect quadratic_defect(const Rational& a, long p) {
  if (a == 0) throw std::invalid_argument("quadratic defect of zero");
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  int v = ord_p(a, p);
  if (parity(v)) return QuadraticDefect::power(v);
  if (p != 2) {
    Integer r = static_cast<long>(unit_residue(a, p, p));
    return legendre(r, p) == 1 ? QuadraticDefect::zero() : QuadraticDefect::power(v);
  }
  switch (unit_residue(a, 2, 8)) {
    case 1: return QuadraticDefect::zero();
    case 5: return QuadraticDefect::power(v + 2);
    default: return QuadraticDefect::power(v + 1);
  }
}

}  // namespace qlat
