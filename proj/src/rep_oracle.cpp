#include "qlat/rep_oracle.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qlat/quad_space.hpp"

namespace qlat {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    default: return "undecided";
  }
}

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;

int ord_or_inf(const Rational& x, long p) { return x == 0 ? INT_MAX : ord_p(x, p); }

Integer residue_big(const Rational& a, const Integer& modulus) {
  Integer den = a.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw std::domain_error("value is not p-integral");
  Integer r = Integer(a.get_num()) * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

void check_gram(const Matrix& g, const char* name) {
  if (g.rows() == 0 || !g.is_symmetric())
    throw std::invalid_argument(std::string(name) + " must be a nonempty symmetric matrix");
  if (g.determinant() == 0) throw std::invalid_argument(std::string(name) + " is singular");
}

// Upper-triangle entries of a k x k symmetric residue matrix, each modulo its own power of p.
struct Layout {
  long p = 2;
  int k = 0;
  std::vector<std::pair<int, int>> entries;
  std::vector<int> exps;
  std::vector<i64> mods;
  std::vector<u64> weights;
  u64 size = 1;
  bool overflow = false;

  Layout(long p_, const std::vector<std::vector<int>>& n) : p(p_), k(static_cast<int>(n.size())) {
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        entries.emplace_back(i, j);
        exps.push_back(n[i][j]);
        mods.push_back(ipow(p, n[i][j]));
      }
    for (auto m : mods) {
      weights.push_back(size);
      if (size > (u64{1} << 62) / static_cast<u64>(m))
        overflow = true;
      else
        size *= static_cast<u64>(m);
    }
  }
  std::size_t count() const { return entries.size(); }

  u64 encode(const std::vector<i64>& v) const {
    u64 c = 0;
    for (std::size_t t = 0; t < v.size(); ++t) c += weights[t] * static_cast<u64>(v[t]);
    return c;
  }
  void decode(u64 c, std::vector<i64>& v) const {
    v.resize(entries.size());
    for (std::size_t t = 0; t < entries.size(); ++t) {
      v[t] = static_cast<i64>(c % static_cast<u64>(mods[t]));
      c /= static_cast<u64>(mods[t]);
    }
  }
  u64 add(const std::vector<i64>& a, const std::vector<i64>& b) const {
    u64 c = 0;
    for (std::size_t t = 0; t < a.size(); ++t) c += weights[t] * static_cast<u64>((a[t] + b[t]) % mods[t]);
    return c;
  }
  u64 sub(const std::vector<i64>& a, const std::vector<i64>& b) const {
    u64 c = 0;
    for (std::size_t t = 0; t < a.size(); ++t)
      c += weights[t] * static_cast<u64>(((a[t] - b[t]) % mods[t] + mods[t]) % mods[t]);
    return c;
  }
};

struct DiagBlock {
  int offset = 0;
  int size = 1;
  int scale = 0;
  i64 d[2][2] = {{0, 0}, {0, 0}};
};

struct Contribution {
  std::vector<i64> value;
  std::vector<i64> x;  // block rows x k, row-major
};

using Bits = std::vector<u64>;
bool test_bit(const Bits& b, u64 i) { return (b[i >> 6] >> (i & 63)) & 1U; }
void set_bit(Bits& b, u64 i) { b[i >> 6] |= u64{1} << (i & 63); }

constexpr std::size_t kEnumerationCap = std::size_t{1} << 24;

std::vector<Contribution> block_contributions(const DiagBlock& b, const Layout& lay, int nmax) {
  const long p = lay.p;
  const int k = lay.k;
  const i64 big = ipow(p, nmax);
  const int digits = std::max(0, nmax - b.scale);
  const i64 base = ipow(p, digits);
  const int cells = b.size * k;
  double total = 1;
  for (int c = 0; c < cells; ++c) total *= static_cast<double>(base);
  if (total > static_cast<double>(kEnumerationCap))
    throw OracleResourceError("block enumeration exceeds cap", static_cast<std::size_t>(total));
  std::vector<Contribution> out;
  std::unordered_set<u64> seen;
  std::vector<i64> x(cells, 0), value(lay.count());
  const auto count = static_cast<u64>(total);
  for (u64 idx = 0; idx < count; ++idx) {
    u64 t = idx;
    // last cell varies fastest, giving lexicographic order on x
    for (int c = cells - 1; c >= 0; --c) {
      x[c] = static_cast<i64>(t % static_cast<u64>(base));
      t /= static_cast<u64>(base);
    }
    for (std::size_t e = 0; e < lay.count(); ++e) {
      auto [i, j] = lay.entries[e];
      i64 s = 0;
      for (int r = 0; r < b.size; ++r)
        for (int q = 0; q < b.size; ++q) {
          i64 term = (x[r * k + i] * b.d[r][q]) % big;
          s = (s + term * x[q * k + j]) % big;
        }
      value[e] = s % lay.mods[e];
    }
    if (seen.insert(lay.encode(value)).second) out.push_back({value, x});
  }
  return out;
}

// Row-by-row reachability over the residue group, then backtracking.
std::optional<std::vector<std::vector<i64>>> plain_search(const std::vector<DiagBlock>& blocks, int n,
                                                          const Layout& lay, const std::vector<i64>& target,
                                                          int nmax, std::size_t cap) {
  const int k = lay.k;
  std::vector<std::vector<i64>> xd(n, std::vector<i64>(k, 0));
  std::vector<const DiagBlock*> rel;
  for (const auto& b : blocks)
    if (b.scale < nmax) rel.push_back(&b);
  bool zero_target = std::all_of(target.begin(), target.end(), [](i64 v) { return v == 0; });
  if (rel.empty()) return zero_target ? std::optional(xd) : std::nullopt;
  if (lay.overflow || lay.size > cap) throw OracleResourceError("residue group exceeds cap", lay.size);

  std::vector<std::vector<Contribution>> contrib;
  for (auto* b : rel) contrib.push_back(block_contributions(*b, lay, nmax));

  const std::size_t R = rel.size();
  const std::size_t words = (lay.size + 63) / 64;
  std::vector<Bits> layers;
  layers.emplace_back(words, 0);
  set_bit(layers[0], 0);
  std::vector<i64> sv;
  for (std::size_t j = 0; j + 1 < R; ++j) {
    Bits next(words, 0);
    const Bits& cur = layers.back();
    for (std::size_t w = 0; w < words; ++w) {
      u64 word = cur[w];
      while (word) {
        int bit = __builtin_ctzll(word);
        word &= word - 1;
        lay.decode(w * 64 + static_cast<u64>(bit), sv);
        for (const auto& c : contrib[j]) set_bit(next, lay.add(sv, c.value));
      }
    }
    layers.push_back(std::move(next));
  }

  std::vector<const Contribution*> chosen(R, nullptr);
  std::vector<i64> w;
  for (const auto& c : contrib[R - 1]) {
    u64 rest = lay.sub(target, c.value);
    if (test_bit(layers[R - 1], rest)) {
      chosen[R - 1] = &c;
      lay.decode(rest, w);
      break;
    }
  }
  if (!chosen[R - 1]) return std::nullopt;
  for (std::size_t j = R - 1; j-- > 0;) {
    for (const auto& c : contrib[j]) {
      u64 rest = lay.sub(w, c.value);
      if (test_bit(layers[j], rest)) {
        chosen[j] = &c;
        lay.decode(rest, w);
        break;
      }
    }
    if (!chosen[j]) throw std::logic_error("backtracking failed");
  }
  for (std::size_t j = 0; j < R; ++j)
    for (int r = 0; r < rel[j]->size; ++r)
      for (int i = 0; i < k; ++i) xd[rel[j]->offset + r][i] = chosen[j]->x[r * k + i];
  return xd;
}

// Subspaces of F_p^k in reduced row echelon form, interned by id.
class SubspaceTable {
 public:
  SubspaceTable(long p, int k, const Layout& lay, const std::vector<int>& high)
      : p_(p), k_(k), lay_(lay), high_(high) {
    vectors_ = static_cast<int>(ipow(p, k));
    intern({});
  }

  int join(int id, int xcode) {
    auto& row = joins_[id];
    if (row[xcode] >= 0) return row[xcode];
    auto basis = bases_[id];
    std::vector<int> x = unpack(xcode);
    insert(basis, x);
    int r = intern(basis);
    joins_[id][xcode] = r;
    return r;
  }

  // Reduces the high digits modulo the projection of W(U) = span{u y^T + y u^T}.
  void reduce(int id, std::vector<i64>& hi) const {
    for (const auto& row : reducers_[id]) {
      int piv = row.first;
      i64 f = hi[piv];
      if (f == 0) continue;
      for (std::size_t t = 0; t < hi.size(); ++t) hi[t] = ((hi[t] - f * row.second[t]) % p_ + p_) % p_;
    }
  }

  std::vector<int> unpack(int code) const {
    std::vector<int> x(k_);
    for (int i = k_ - 1; i >= 0; --i) {
      x[i] = code % p_;
      code /= static_cast<int>(p_);
    }
    return x;
  }

 private:
  i64 inv(i64 a) const {
    i64 r = 1, b = a % p_, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return r;
  }

  // Inserts x into an RREF basis over F_p.
  void insert(std::vector<std::vector<int>>& basis, std::vector<int> x) const {
    for (const auto& row : basis) {
      int piv = static_cast<int>(std::find_if(row.begin(), row.end(), [](int v) { return v != 0; }) - row.begin());
      int f = x[piv];
      if (f)
        for (int i = 0; i < k_; ++i) x[i] = static_cast<int>(((x[i] - f * row[i]) % p_ + p_) % p_);
    }
    auto it = std::find_if(x.begin(), x.end(), [](int v) { return v != 0; });
    if (it == x.end()) return;
    int piv = static_cast<int>(it - x.begin());
    i64 s = inv(x[piv]);
    for (int i = 0; i < k_; ++i) x[i] = static_cast<int>(x[i] * s % p_);
    for (auto& row : basis) {
      int f = row[piv];
      if (f)
        for (int i = 0; i < k_; ++i) row[i] = static_cast<int>(((row[i] - f * x[i]) % p_ + p_) % p_);
    }
    basis.push_back(x);
    std::sort(basis.begin(), basis.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
      return std::find_if(a.begin(), a.end(), [](int v) { return v != 0; }) - a.begin() <
             std::find_if(b.begin(), b.end(), [](int v) { return v != 0; }) - b.begin();
    });
  }

  int intern(const std::vector<std::vector<int>>& basis) {
    std::vector<int> key;
    for (const auto& r : basis) key.insert(key.end(), r.begin(), r.end());
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(bases_.size());
    ids_.emplace(key, id);
    bases_.push_back(basis);
    joins_.emplace_back(vectors_, -1);
    reducers_.push_back(build_reducer(basis));
    return id;
  }

  std::vector<std::pair<int, std::vector<i64>>> build_reducer(const std::vector<std::vector<int>>& basis) const {
    const std::size_t h = high_.size();
    std::vector<std::vector<i64>> rows;
    for (const auto& u : basis)
      for (int l = 0; l < k_; ++l) {
        std::vector<i64> g(h, 0);
        for (std::size_t t = 0; t < h; ++t) {
          auto [i, j] = lay_.entries[high_[t]];
          i64 v = (i == l ? u[j] : 0) + (j == l ? u[i] : 0);
          g[t] = v % p_;
        }
        rows.push_back(g);
      }
    std::vector<std::pair<int, std::vector<i64>>> out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h && r < rows.size(); ++c) {
      std::size_t piv = r;
      while (piv < rows.size() && rows[piv][c] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[piv], rows[r]);
      i64 s = inv(rows[r][c]);
      for (auto& v : rows[r]) v = v * s % p_;
      for (std::size_t q = 0; q < rows.size(); ++q) {
        if (q == r || rows[q][c] == 0) continue;
        i64 f = rows[q][c];
        for (std::size_t t = 0; t < h; ++t) rows[q][t] = ((rows[q][t] - f * rows[r][t]) % p_ + p_) % p_;
      }
      out.emplace_back(static_cast<int>(c), rows[r]);
      ++r;
    }
    return out;
  }

  long p_;
  int k_;
  const Layout& lay_;
  std::vector<int> high_;
  int vectors_ = 1;
  std::map<std::vector<int>, int> ids_;
  std::vector<std::vector<std::vector<int>>> bases_;
  std::vector<std::vector<int>> joins_;
  std::vector<std::vector<std::pair<int, std::vector<i64>>>> reducers_;
};

i64 inverse_mod(i64 a, long p) {
  i64 r = 1, b = ((a % p) + p) % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// Odd p, diagonal D, moduli p or p^2. Each row vector is x0 + p*y with x0 in [0,p)^k;
// the y-part only moves the p-digit of the p^2 entries, inside W(U) for U = span of the
// unit-row x0's, so states are (U, sums with p-digits reduced mod W(U)).
std::optional<std::vector<std::vector<i64>>> linearized_search(const std::vector<i64>& diag, const std::vector<int>& scales,
                                                               const Layout& lay, const std::vector<i64>& target,
                                                               std::size_t cap) {
  const long p = lay.p;
  const int k = lay.k;
  const int n = static_cast<int>(diag.size());
  std::vector<int> high;
  for (std::size_t t = 0; t < lay.count(); ++t)
    if (lay.exps[t] == 2) high.push_back(static_cast<int>(t));
  if (lay.overflow || lay.size > (u64{1} << 40))
    throw OracleResourceError("residue group exceeds cap", SIZE_MAX);
  SubspaceTable subs(p, k, lay, high);

  // Rows whose entries differ by a unit square factor act identically on the state set.
  std::vector<int> row_class(n);
  for (int r = 0; r < n; ++r) {
    i64 u = scales[r] == 1 ? diag[r] / p : diag[r];
    row_class[r] = scales[r] * 2 + (legendre(Integer(static_cast<long>(u % p)), p) == -1 ? 1 : 0);
  }
  std::vector<int> order;  // p-rows first, then unit rows, equal classes adjacent
  for (int r = 0; r < n; ++r)
    if (scales[r] <= 1) order.push_back(r);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (scales[a] != scales[b]) return scales[a] > scales[b];
    return row_class[a] < row_class[b];
  });

  const int vectors = static_cast<int>(ipow(p, k));
  std::vector<int> reps;  // x0 up to sign
  std::vector<std::vector<int>> unpacked;
  for (int code = 0; code < vectors; ++code) {
    auto x = subs.unpack(code);
    auto it = std::find_if(x.begin(), x.end(), [](int v) { return v != 0; });
    if (it == x.end() || *it <= (p - 1) / 2) {
      reps.push_back(code);
      unpacked.push_back(x);
    }
  }

  std::vector<i64> hi(high.size());
  auto normalize = [&](int uid, std::vector<i64>& v) {
    if (high.empty()) return;
    for (std::size_t t = 0; t < high.size(); ++t) hi[t] = v[high[t]] / p;
    subs.reduce(uid, hi);
    for (std::size_t t = 0; t < high.size(); ++t) v[high[t]] = v[high[t]] % p + p * hi[t];
  };
  auto key = [&](int uid, const std::vector<i64>& v) { return static_cast<u64>(uid) * lay.size + lay.encode(v); };
  std::unordered_map<int, u64> target_keys;
  auto target_key = [&](int uid) {
    auto it = target_keys.find(uid);
    if (it != target_keys.end()) return it->second;
    std::vector<i64> t = target;
    normalize(uid, t);
    return target_keys[uid] = key(uid, t);
  };

  struct Parent {
    u64 state;
    int x;
  };
  struct Step {
    int row;
    std::unordered_map<u64, Parent> parents;
  };
  std::vector<Step> steps;
  std::vector<u64> current{0};
  std::vector<i64> base, v(lay.count());
  std::optional<Parent> last_hit;
  int saturated_class = -1;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int r = order[pos];
    if (row_class[r] == saturated_class) continue;
    const bool unit = scales[r] == 0;
    const bool last = pos + 1 == order.size();
    std::vector<std::vector<i64>> contrib;
    for (const auto& x : unpacked) {
      std::vector<i64> c(lay.count());
      for (std::size_t t = 0; t < lay.count(); ++t) {
        auto [i, j] = lay.entries[t];
        c[t] = diag[r] % lay.mods[t] * x[i] % lay.mods[t] * x[j] % lay.mods[t];
      }
      contrib.push_back(std::move(c));
    }
    Step step{r, {}};
    std::vector<u64> next;
    for (u64 s : current) {
      const int uid = static_cast<int>(s / lay.size);
      lay.decode(s % lay.size, base);
      for (std::size_t q = 0; q < reps.size(); ++q) {
        for (std::size_t t = 0; t < lay.count(); ++t) v[t] = (base[t] + contrib[q][t]) % lay.mods[t];
        const int nid = unit ? subs.join(uid, reps[q]) : uid;
        normalize(nid, v);
        const u64 ns = key(nid, v);
        if (last) {
          if (ns == target_key(nid)) {
            last_hit = Parent{s, reps[q]};
            break;
          }
        } else if (step.parents.emplace(ns, Parent{s, reps[q]}).second) {
          next.push_back(ns);
        }
      }
      if (last_hit) break;
      if (next.size() > cap) throw OracleResourceError("linearized search exceeds state cap", next.size());
    }
    if (last) {
      if (!last_hit) return std::nullopt;
      step.parents.emplace(0, *last_hit);
      steps.push_back(std::move(step));
      break;
    }
    std::sort(next.begin(), next.end());
    if (next == current && pos > 0 && row_class[order[pos - 1]] == row_class[r]) saturated_class = row_class[r];
    current = std::move(next);
    steps.push_back(std::move(step));
  }

  std::optional<u64> hit;
  if (last_hit) {
    hit = 0;
  } else {
    for (u64 s : current)
      if (s == target_key(static_cast<int>(s / lay.size))) {
        hit = s;
        break;
      }
    if (!hit) return std::nullopt;
  }

  std::vector<std::vector<i64>> x0(n, std::vector<i64>(k, 0));
  u64 s = *hit;
  for (std::size_t j = steps.size(); j-- > 0;) {
    const Parent& pr = steps[j].parents.at(s);
    auto x = subs.unpack(pr.x);
    for (int i = 0; i < k; ++i) x0[steps[j].row][i] = x[i];
    s = pr.state;
  }

  // Solve for the p-digits y_r of the unit rows.
  const i64 p2 = p * p;
  std::vector<int> units;
  for (int r = 0; r < n; ++r)
    if (scales[r] == 0) units.push_back(r);
  const std::size_t unknowns = units.size() * static_cast<std::size_t>(k);
  std::vector<std::vector<i64>> rows;
  for (int t : high) {
    auto [i, j] = lay.entries[t];
    i64 sum = 0;
    for (int r = 0; r < n; ++r)
      if (scales[r] <= 1) sum = (sum + diag[r] % p2 * x0[r][i] % p2 * x0[r][j]) % p2;
    i64 diff = ((target[t] - sum) % p2 + p2) % p2;
    if (diff % p != 0) throw std::logic_error("linearized witness has wrong residue");
    std::vector<i64> eq(unknowns + 1, 0);
    for (std::size_t u = 0; u < units.size(); ++u) {
      i64 d = diag[units[u]] % p;
      eq[u * k + j] = (eq[u * k + j] + d * x0[units[u]][i]) % p;
      eq[u * k + i] = (eq[u * k + i] + d * x0[units[u]][j]) % p;
    }
    eq[unknowns] = diff / p;
    rows.push_back(eq);
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    i64 sc = inverse_mod(rows[rank][col], p);
    for (auto& a : rows[rank]) a = a * sc % p;
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == rank || rows[q][col] == 0) continue;
      i64 f = rows[q][col];
      for (std::size_t a = 0; a <= unknowns; ++a) rows[q][a] = ((rows[q][a] - f * rows[rank][a]) % p + p) % p;
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  for (std::size_t q = rank; q < rows.size(); ++q)
    if (rows[q][unknowns] != 0) throw std::logic_error("linearized witness system is inconsistent");
  std::vector<i64> y(unknowns, 0);
  for (std::size_t q = 0; q < rank; ++q) y[pivot_col[q]] = rows[q][unknowns];
  for (std::size_t u = 0; u < units.size(); ++u)
    for (int i = 0; i < k; ++i) x0[units[u]][i] += p * y[u * k + i];
  (void)cap;
  return x0;
}

Matrix reduce_matrix(const Matrix& x, const Integer& modulus) {
  Matrix r(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = Rational(residue_big(x(i, j), modulus));
  return r;
}

// Newton iteration X <- X (I - L^-1 E / 2) until X agrees with an exact
// representation modulo p^target.
Matrix lift_witness(const Matrix& lr, const Matrix& mr, Matrix x, long p, int e, int target, int cmax) {
  const Matrix linv = lr.inverse();
  const std::size_t k = lr.rows();
  Integer work = pow_p(p, target + cmax + 3 * e + 2).get_num();
  for (int guard = 0; guard < 64; ++guard) {
    Matrix err = x.transpose() * mr * x - lr;
    bool exact = true;
    for (std::size_t i = 0; i < k && exact; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (err(i, j) != 0) {
          exact = false;
          break;
        }
    if (exact) break;
    Matrix f = linv * err;
    int fo = min_ord(f, p);
    if (fo < 2 * e + 1) throw std::logic_error("witness outside the Newton basin");
    if (fo - e >= target) break;
    x = reduce_matrix(x * (Matrix::identity(k) - f.scaled(Rational(1, 2))), work);
  }
  return reduce_matrix(x, pow_p(p, target).get_num());
}

}  // namespace

int default_precision(const Matrix& L, const Matrix& M, long p, int lift_margin) {
  int s = -min_ord(M, p);
  Rational f = pow_p(p, s);
  int e = p == 2 ? 1 : 0;
  int n = 2 * e + 1 + ord_p(L.scaled(f).determinant(), p) + ord_p(M.scaled(f).determinant(), p) + lift_margin;
  return std::max(n, 1);
}

OracleResult represents_lattice(const Matrix& L, const Matrix& M, const OracleConfig& cfg) {
  const long p = cfg.p;
  if (!is_prime(p)) throw std::invalid_argument("oracle prime must be prime");
  check_gram(L, "L");
  check_gram(M, "M");
  if (cfg.lift_margin < 0) throw std::invalid_argument("lift margin must be nonnegative");
  const int e = p == 2 ? 1 : 0;
  const int k = static_cast<int>(L.rows());
  const int n = static_cast<int>(M.rows());

  OracleResult res;
  res.scale_shift = -min_ord(M, p);
  const Rational factor = pow_p(p, res.scale_shift);
  const Matrix lr = L.scaled(factor);
  const Matrix mr = M.scaled(factor);
  res.precision = cfg.precision.value_or(default_precision(L, M, p, cfg.lift_margin));
  if (res.precision < 1) throw std::invalid_argument("precision must be positive");
  if (k > n) {
    res.answer = Answer::no;
    res.reason = "rank of L exceeds rank of M";
    return res;
  }
  if (min_ord(lr, p) < 0) {
    res.answer = Answer::no;
    res.reason = "L has a B-value outside the scale of M";
    return res;
  }

  const BlockSplitting ms = block_split(mr, p);
  const BlockSplitting ls = block_split(lr, p);
  const Matrix linv = ls.form.inverse();
  std::vector<int> c(k, 0);
  for (int j = 0; j < k; ++j)
    for (int a = 0; a < k; ++a)
      if (linv(a, j) != 0) c[j] = std::max(c[j], -ord_p(linv(a, j), p));
  std::vector<std::vector<int>> nij(k, std::vector<int>(k));
  int nreq = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      nij[i][j] = 2 * e + 1 + std::max(c[i], c[j]);
      nreq = std::max(nreq, nij[i][j]);
    }
  const int cmax = *std::max_element(c.begin(), c.end());
  res.required_precision = nreq;
  if (res.precision < nreq) {
    res.answer = Answer::undecided;
    res.reason = "precision p^" + std::to_string(res.precision) + " is below the certified bound p^" +
                 std::to_string(nreq);
    return res;
  }
  if (ipow(p, nreq) > (i64{1} << 30)) throw OracleResourceError("modulus too large", static_cast<std::size_t>(nreq));

  Layout lay(p, nij);
  std::vector<i64> target(lay.count());
  for (std::size_t t = 0; t < lay.count(); ++t) {
    auto [i, j] = lay.entries[t];
    target[t] = residue(ls.form(i, j), p, lay.mods[t]);
  }

  std::vector<DiagBlock> blocks;
  const auto scales = ms.block_scales(p);
  const i64 big = ipow(p, nreq);
  int off = 0;
  for (std::size_t b = 0; b < ms.block_sizes.size(); ++b) {
    DiagBlock blk;
    blk.offset = off;
    blk.size = static_cast<int>(ms.block_sizes[b]);
    blk.scale = scales[b];
    for (int r = 0; r < blk.size; ++r)
      for (int q = 0; q < blk.size; ++q) blk.d[r][q] = residue(ms.form(off + r, off + q), p, big);
    blocks.push_back(blk);
    off += blk.size;
  }

  std::optional<std::vector<std::vector<i64>>> found;
  if (p != 2 && nreq == 2) {
    std::vector<i64> diag;
    std::vector<int> row_scales;
    for (const auto& b : blocks) {
      diag.push_back(b.d[0][0]);
      row_scales.push_back(b.scale);
    }
    found = linearized_search(diag, row_scales, lay, target, cfg.state_cap);
  } else {
    found = plain_search(blocks, n, lay, target, nreq, cfg.state_cap);
  }
  if (!found) {
    res.answer = Answer::no;
    res.reason = "exhaustive search modulo p^" + std::to_string(nreq) + " found no representation";
    return res;
  }

  Matrix xd(n, k);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < k; ++i) xd(r, i) = Rational((*found)[r][i]);
  Matrix err = xd.transpose() * ms.form * xd - ls.form;
  for (std::size_t t = 0; t < lay.count(); ++t) {
    auto [i, j] = lay.entries[t];
    if (ord_or_inf(err(i, j), p) < lay.exps[t]) throw std::logic_error("search returned an uncertified witness");
  }
  Matrix x = ms.basis * xd * ls.basis.inverse();
  res.witness = lift_witness(lr, mr, x, p, e, res.precision, cmax);
  Matrix check = res.witness->transpose() * mr * *res.witness - lr;
  for (std::size_t i = 0; i < check.rows(); ++i)
    for (std::size_t j = 0; j < check.cols(); ++j)
      if (ord_or_inf(check(i, j), p) < res.precision) throw std::logic_error("lifted witness failed verification");
  res.answer = Answer::yes;
  res.reason = "certified solution modulo p^" + std::to_string(nreq) + " lifted";
  return res;
}

OracleResult represents_value(const Matrix& M, const Rational& a, const OracleConfig& cfg) {
  if (a == 0) throw std::invalid_argument("represented value must be nonzero");
  return represents_lattice(Matrix{{a}}, M, cfg);
}

bool norm_maximal(const Matrix& L, long p) {
  check_gram(L, "L");
  if (!is_prime(p)) throw std::invalid_argument("not a prime");
  const std::size_t n = L.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (L(i, i) != 0 && ord_p(L(i, i), p) < 0) throw std::invalid_argument("lattice norm is not integral");
    for (std::size_t j = i + 1; j < n; ++j)
      if (L(i, j) != 0 && ord_p(2 * L(i, j), p) < 0) throw std::invalid_argument("lattice norm is not integral");
  }
  const i64 total = ipow(p, static_cast<int>(n));
  std::vector<Rational> v(n);
  for (i64 code = 1; code < total; ++code) {
    i64 t = code;
    for (std::size_t i = n; i-- > 0;) {
      v[i] = Rational(t % p, p);
      t /= p;
    }
    Rational q = 0;
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      Rational b = 0;
      for (std::size_t i = 0; i < n; ++i) b += v[i] * L(i, j);
      if (b != 0 && ord_p(2 * b, p) < 0) ok = false;
      q += b * v[j];
    }
    if (ok && (q == 0 || ord_p(q, p) >= 0)) return false;
  }
  return true;
}

bool maximality_scan(const Matrix& L, long p) {
  check_gram(L, "L");
  if (is_isotropic(inv_of_gram(L, Place::finite(p))))
    throw std::invalid_argument("maximality scan needs an anisotropic space");
  return norm_maximal(L, p);
}

}  // namespace qlat
