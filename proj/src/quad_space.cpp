#include "qlat/quad_space.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qlat {

namespace {

void require_same_place(const SpaceInv& a, const SpaceInv& b) {
  if (!(a.place == b.place)) throw std::invalid_argument("spaces at different places");
}

SquareClass minus_one(const Place& v) { return square_class(Rational(-1), v); }

SpaceInv real_signature(int pos, int neg) {
  Place r = Place::real();
  SpaceInv s{r, pos + neg, SquareClass{r, 0, neg % 2}, 1, pos, neg};
  s.hasse = ((neg * (neg + 1) / 2) % 2) ? -1 : 1;
  return s;
}

}  // namespace

std::string SpaceInv::to_string() const {
  std::ostringstream os;
  if (place.is_real())
    os << "real signature (" << pos << ", " << neg << ")";
  else
    os << place.to_string() << " dim " << dim << " det " << det.to_string() << " hasse " << hasse;
  return os.str();
}

SpaceInv inv_of_diagonal(const std::vector<Rational>& entries, const Place& v) {
  if (entries.empty()) throw std::invalid_argument("empty diagonal");
  for (const auto& a : entries)
    if (a == 0) throw std::invalid_argument("zero diagonal entry");
  if (v.is_real()) {
    int neg = static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                             [](const Rational& a) { return a < 0; }));
    return real_signature(static_cast<int>(entries.size()) - neg, neg);
  }
  std::vector<SquareClass> cls;
  for (const auto& a : entries) cls.push_back(square_class(a, v));
  SpaceInv s{v, static_cast<int>(entries.size()), cls[0], 1, 0, 0};
  for (std::size_t i = 1; i < cls.size(); ++i) s.det = s.det * cls[i];
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i; j < cls.size(); ++j) s.hasse *= hilbert_symbol(cls[i], cls[j]);
  return s;
}

SpaceInv inv_of_gram(const Matrix& gram, const Place& v) {
  return inv_of_diagonal(diagonalize_over_q(gram), v);
}

SpaceInv inv_of_class(const SquareClass& c) {
  if (c.place.is_real()) return real_signature(c.u ? 0 : 1, c.u ? 1 : 0);
  return SpaceInv{c.place, 1, c, hilbert_symbol(c, c), 0, 0};
}

SpaceInv hyperbolic_plane(const Place& v) { return inv_of_diagonal({Rational(1), Rational(-1)}, v); }

SpaceInv orthogonal_sum(const SpaceInv& a, const SpaceInv& b) {
  require_same_place(a, b);
  if (a.place.is_real()) return real_signature(a.pos + b.pos, a.neg + b.neg);
  return SpaceInv{a.place, a.dim + b.dim, a.det * b.det, a.hasse * b.hasse * hilbert_symbol(a.det, b.det),
                  0, 0};
}

bool isometric(const SpaceInv& a, const SpaceInv& b) {
  require_same_place(a, b);
  if (a.place.is_real()) return a.pos == b.pos && a.neg == b.neg;
  return a.dim == b.dim && a.det == b.det && a.hasse == b.hasse;
}

bool is_isotropic(const SpaceInv& v) {
  if (v.place.is_real()) return v.pos >= 1 && v.neg >= 1;
  switch (v.dim) {
    case 1: return false;
    case 2: return v.det == minus_one(v.place);
    case 3: {
      Rational d(v.det.representative());
      return v.hasse == inv_of_diagonal({Rational(1), Rational(-1), -d}, v.place).hasse;
    }
    case 4: {
      SpaceInv hh = orthogonal_sum(hyperbolic_plane(v.place), hyperbolic_plane(v.place));
      return !(v.det.is_identity() && !isometric(v, hh));
    }
    default: return v.dim >= 5;
  }
}

bool space_represents(const SpaceInv& u, const SpaceInv& v) {
  require_same_place(u, v);
  if (u.place.is_real()) return u.pos <= v.pos && u.neg <= v.neg;
  int nu = v.dim - u.dim;
  if (nu < 0) return false;
  if (nu == 0) return isometric(u, v);
  if (nu == 1) return isometric(orthogonal_sum(u, inv_of_class(u.det * v.det)), v);
  if (nu == 2) {
    if (!(u.det == minus_one(u.place) * v.det)) return true;
    return isometric(orthogonal_sum(u, hyperbolic_plane(u.place)), v);
  }
  return true;
}

bool complex_k_universal(int dim, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  return dim >= k;
}

bool space_k_universal(const SpaceInv& v, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (v.place.is_real()) return std::min(v.pos, v.neg) >= k;
  if (v.dim >= k + 3) return true;
  if (k == 1 && (v.dim == 2 || v.dim == 3) && is_isotropic(v)) return true;
  if (k == 2) {
    SpaceInv hh = orthogonal_sum(hyperbolic_plane(v.place), hyperbolic_plane(v.place));
    return isometric(v, hh);
  }
  return false;
}

std::optional<SpaceInv> sibling_space(const SpaceInv& v) {
  if (v.place.is_real()) throw std::invalid_argument("sibling space needs a finite place");
  if (v.dim == 1 || isometric(v, hyperbolic_plane(v.place))) return std::nullopt;
  SpaceInv s = v;
  s.hasse = -s.hasse;
  return s;
}

bool is_realizable(const SpaceInv& v) {
  if (v.dim < 1) return false;
  if (v.place.is_real()) return v.pos >= 0 && v.neg >= 0 && v.pos + v.neg == v.dim;
  if (v.hasse != 1 && v.hasse != -1) return false;
  if (v.dim == 1) return v.hasse == hilbert_symbol(v.det, v.det);
  if (v.dim == 2 && v.det == minus_one(v.place)) return isometric(v, hyperbolic_plane(v.place));
  return true;
}

std::vector<SpaceInv> enumerate_spaces(const Place& place, int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  std::vector<SpaceInv> out;
  if (place.is_real()) {
    for (int neg = 0; neg <= dim; ++neg) out.push_back(real_signature(dim - neg, neg));
    return out;
  }
  for (const auto& d : SquareClass::all(place))
    for (int h : {1, -1}) {
      SpaceInv s{place, dim, d, h, 0, 0};
      if (is_realizable(s)) out.push_back(s);
    }
  return out;
}

}  // namespace qlat
