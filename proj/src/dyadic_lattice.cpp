#include "qlat/dyadic_lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qlat/local_arith.hpp"

namespace qlat {

namespace {

const Place kTwo = Place::finite(2);

Rational two_pow(int e) { return pow_p(2, e); }

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

int DyadicLattice::rank() const {
  int r = 0;
  for (const auto& c : components) r += std::holds_alternative<DiagComponent>(c) ? 1 : 2;
  return r;
}

Matrix gram_of(const DyadicLattice& L) {
  Matrix g(0, 0);
  for (const auto& c : L.components) {
    if (const auto* d = std::get_if<DiagComponent>(&c)) {
      if (d->a == 0) throw std::invalid_argument("diagonal component must be nonzero");
      g = direct_sum(g, Matrix::diagonal({d->a}));
    } else {
      const auto& pl = std::get<PlaneComponent>(c);
      if (pl.gamma == 0) throw std::invalid_argument("plane scale factor must be nonzero");
      g = direct_sum(g, Matrix::from_row_major({pl.gamma * pl.xi, pl.gamma, pl.gamma, pl.gamma * pl.eta}));
    }
  }
  if (g.rows() == 0 || g.determinant() == 0) throw std::invalid_argument("lattice Gram matrix is singular");
  return g;
}

SpaceInv space_of(const DyadicLattice& L) { return inv_of_gram(gram_of(L), kTwo); }

DyadicLattice direct_sum(const DyadicLattice& a, const DyadicLattice& b) {
  DyadicLattice out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  return out;
}

ScaleNorm scale_norm(const Matrix& gram) {
  int s = min_ord(gram, 2);
  int n = 1 + s;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (gram(i, i) != 0) n = std::min(n, ord_p(gram(i, i), 2));
  return {s, n};
}

ScaleNorm scale_norm(const DyadicLattice& L) { return scale_norm(gram_of(L)); }

std::vector<JordanConstituent> dyadic_jordan(const Matrix& gram) {
  auto bs = block_split(gram, 2);
  std::map<int, JordanConstituent> by_scale;
  auto scales = bs.block_scales(2);
  std::size_t off = 0;
  for (std::size_t b = 0; b < bs.block_sizes.size(); ++b) {
    std::size_t sz = bs.block_sizes[b];
    int s = scales[b];
    int n = 1 + s;
    for (std::size_t i = off; i < off + sz; ++i)
      if (bs.form(i, i) != 0) n = std::min(n, ord_p(bs.form(i, i), 2));
    auto [it, fresh] = by_scale.try_emplace(s, JordanConstituent{s, 0, n});
    it->second.rank += static_cast<int>(sz);
    it->second.norm_exp = std::min(it->second.norm_exp, n);
    off += sz;
  }
  std::vector<JordanConstituent> out;
  for (auto& [s, c] : by_scale) out.push_back(c);
  return out;
}

int twist_hilbert_symbol(int t, long sigma, int e) {
  if (e < 1) throw std::invalid_argument("ramification index must be positive");
  if (t % 2 == 0 || t < 1 || t > 2 * e - 1) throw std::invalid_argument("t must be odd in [1, 2e-1]");
  if (sigma % 2 == 0) throw std::invalid_argument("sigma must be a unit");
  if (e > 1) return -1;
  Rational rho = local_unit_data(2).rho;
  Rational s(sigma);
  Rational a = 1 - s * two_pow(t);
  Rational b = 1 - 4 * rho / s / two_pow(t);
  return hilbert_symbol(a, b, kTwo);
}

std::string to_string(MaximalType t) {
  switch (t) {
    case MaximalType::I: return "I";
    case MaximalType::II: return "II";
    case MaximalType::III: return "III";
    case MaximalType::IV: return "IV";
  }
  return "?";
}

std::string MaximalBinaryDescriptor::to_string() const {
  std::ostringstream os;
  os << "type " << qlat::to_string(type);
  std::string sig = sigma ? std::to_string(*sigma) : "sigma";
  switch (type) {
    case MaximalType::I:
      os << " i=" << i << " sigma=" << sig << (twisted ? " twisted" : "");
      break;
    case MaximalType::II:
      os << " lead=" << (delta_lead ? "Delta" : "1") << " sigma=" << sig;
      break;
    case MaximalType::III:
      os << (twisted ? " twisted" : "");
      break;
    case MaximalType::IV:
      break;
  }
  return os.str();
}

std::vector<MaximalBinaryDescriptor> maximal_binary_list(int e) {
  if (e < 1) throw std::invalid_argument("ramification index must be positive");
  std::vector<std::optional<long>> sigmas;
  if (e == 1)
    for (long s : {1L, 3L, 5L, 7L}) sigmas.emplace_back(s);
  else
    sigmas.emplace_back(std::nullopt);

  std::vector<MaximalBinaryDescriptor> out;
  for (int i = 0; i < e; ++i)
    for (bool tw : {false, true})
      for (const auto& s : sigmas) out.push_back({MaximalType::I, i, s, tw, false});
  for (bool lead : {false, true})
    for (const auto& s : sigmas) out.push_back({MaximalType::II, 0, s, false, lead});
  for (bool tw : {false, true}) out.push_back({MaximalType::III, 0, std::nullopt, tw, false});
  out.push_back({MaximalType::IV, 0, std::nullopt, false, false});
  return out;
}

DyadicLattice materialize(const MaximalBinaryDescriptor& d) {
  auto ud = local_unit_data(2);
  const Rational& rho = ud.rho;
  Rational delta(ud.delta);
  switch (d.type) {
    case MaximalType::I: {
      if (d.i != 0 || !d.sigma) throw std::invalid_argument("only e = 1 descriptors can be materialized");
      Rational s(*d.sigma);
      Rational c = d.twisted ? Rational(1 - 4 * rho / (s * 2)) : Rational(1);
      return {{PlaneComponent{c, 1, 2 * s}}};
    }
    case MaximalType::II: {
      if (!d.sigma) throw std::invalid_argument("only e = 1 descriptors can be materialized");
      Rational lead = d.delta_lead ? delta : Rational(1);
      return {{DiagComponent{lead}, DiagComponent{Rational(2 * *d.sigma)}}};
    }
    case MaximalType::III:
      return {{PlaneComponent{d.twisted ? Rational(1) : Rational(1, 2), 2, 2 * rho}}};
    case MaximalType::IV:
      return half_hyperbolic_plane();
  }
  throw std::logic_error("unknown descriptor type");
}

std::vector<DyadicLattice> testing_set_2_universal(int e) {
  if (e != 1) throw std::invalid_argument("testing set is only materialized for e = 1");
  std::vector<DyadicLattice> out;
  std::vector<SpaceInv> seen;
  for (const auto& d : maximal_binary_list(1)) {
    DyadicLattice L = materialize(d);
    SpaceInv v = space_of(L);
    bool dup = std::any_of(seen.begin(), seen.end(), [&](const SpaceInv& w) { return isometric(v, w); });
    if (dup) continue;
    seen.push_back(v);
    out.push_back(std::move(L));
  }
  return out;
}

DyadicLattice half_hyperbolic_plane() { return {{PlaneComponent{Rational(1, 2), 0, 0}}}; }

DyadicLattice anisotropic_half_plane() {
  return {{PlaneComponent{Rational(1, 2), 2, 2 * local_unit_data(2).rho}}};
}

QuaternaryVerdict quaternary_2_universal(const Matrix& gram) {
  if (gram.rows() != 4) throw std::invalid_argument("quaternary criterion needs rank 4");
  QuaternaryVerdict v;
  v.scale_norm = scale_norm(gram);
  if (v.scale_norm.norm_exp < 0) throw std::invalid_argument("lattice norm must be integral");
  auto jordan = dyadic_jordan(gram);
  v.half_modular = jordan.size() == 1 && jordan[0].scale_exp == -1;
  SpaceInv hh = orthogonal_sum(hyperbolic_plane(kTwo), hyperbolic_plane(kTwo));
  v.hyperbolic_space = isometric(inv_of_gram(gram, kTwo), hh);
  v.universal = v.scale_norm.scale_exp == -1 && v.half_modular && v.scale_norm.norm_exp == 0 && v.hyperbolic_space;
  return v;
}

bool is_2_universal_quaternary(const DyadicLattice& L) { return quaternary_2_universal(gram_of(L)).universal; }

bool excludes_anisotropic_half_plane(const DyadicLattice& N) {
  auto sn = scale_norm(N);
  return sn.scale_exp >= 0 && sn.norm_exp >= 1;
}

bool classic_2_universal_quaternary_exists() { return false; }

std::vector<DyadicLattice> classic_binary_probes() {
  std::vector<DyadicLattice> out;
  for (auto& L : testing_set_2_universal(1))
    if (scale_norm(L).scale_exp >= 0) out.push_back(std::move(L));
  out.push_back({{PlaneComponent{1, 0, 0}}});
  out.push_back({{PlaneComponent{1, 1, 0}}});
  out.push_back({{PlaneComponent{1, 2, 0}}});
  out.push_back({{DiagComponent{1}, DiagComponent{-1}}});
  return out;
}

std::vector<ClassicWitness> classic_quaternary_witnesses(const std::vector<DyadicLattice>& candidates,
                                                         OracleConfig cfg) {
  cfg.p = 2;
  auto probes = classic_binary_probes();
  std::vector<Matrix> probe_grams;
  for (const auto& b : probes) probe_grams.push_back(gram_of(b));
  std::vector<ClassicWitness> out;
  for (const auto& c : candidates) {
    if (c.rank() != 4 || scale_norm(c).scale_exp < 0)
      throw std::invalid_argument("candidate must be a classic quaternary lattice");
    Matrix g = gram_of(c);
    ClassicWitness w;
    for (std::size_t i = 0; i < probe_grams.size(); ++i) {
      auto r = represents_lattice(probe_grams[i], g, cfg);
      w.precision = std::max(w.precision, r.precision);
      if (r.answer == Answer::no) {
        w.probe = i;
        break;
      }
    }
    out.push_back(w);
  }
  return out;
}

DyadicLattice parse_blocks(std::string_view text) {
  DyadicLattice L;
  for (const auto& raw : split(text, ';')) {
    std::string item = trim(raw);
    if (item.empty()) continue;
    auto parts = split(item, ':');
    for (auto& p : parts) p = trim(p);
    if (parts[0] == "d" && parts.size() == 2) {
      L.components.push_back(DiagComponent{parse_rational(parts[1])});
    } else if (parts[0] == "p" && parts.size() == 4) {
      L.components.push_back(
          PlaneComponent{parse_rational(parts[1]), parse_rational(parts[2]), parse_rational(parts[3])});
    } else {
      throw std::invalid_argument("bad block descriptor: " + item);
    }
  }
  if (L.components.empty()) throw std::invalid_argument("empty block list");
  gram_of(L);
  return L;
}

std::string format_blocks(const DyadicLattice& L) {
  std::string out;
  for (const auto& c : L.components) {
    if (!out.empty()) out += ';';
    if (const auto* d = std::get_if<DiagComponent>(&c)) {
      out += "d:" + to_string(d->a);
    } else {
      const auto& p = std::get<PlaneComponent>(c);
      out += "p:" + to_string(p.gamma) + ":" + to_string(p.xi) + ":" + to_string(p.eta);
    }
  }
  return out;
}

}  // namespace qlat
