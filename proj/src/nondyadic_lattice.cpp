#include "qlat/nondyadic_lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qlat {

namespace {

void check_blocks(const std::vector<JordanBlock>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("Jordan data needs at least one block");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rank < 1) throw std::invalid_argument("Jordan block rank must be positive");
    if (i > 0 && blocks[i].scale_exp <= blocks[i - 1].scale_exp)
      throw std::invalid_argument("Jordan block scales must strictly increase");
  }
}

void require_concrete(const JordanLatticeND& L) {
  if (!L.concrete()) throw std::invalid_argument("operation needs a concrete odd prime");
}

}  // namespace

int JordanLatticeND::rank() const {
  int r = 0;
  for (const auto& b : blocks) r += b.rank;
  return r;
}

JordanLatticeND make_jordan(long p, std::vector<JordanBlock> blocks) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("non-dyadic lattices need an odd prime");
  check_blocks(blocks);
  return JordanLatticeND{p, p, std::move(blocks)};
}

JordanLatticeND make_abstract_jordan(long q, std::vector<JordanBlock> blocks) {
  long base = 0;
  for (long d = 3; d <= q; d += 2)
    if (q % d == 0) {
      base = d;
      break;
    }
  long t = q;
  while (base > 1 && t % base == 0) t /= base;
  if (q < 3 || q % 2 == 0 || t != 1 || !is_prime(base))
    throw std::invalid_argument("residue size must be an odd prime power");
  check_blocks(blocks);
  return JordanLatticeND{0, q, std::move(blocks)};
}

JordanLatticeND jordan_from_gram(const Matrix& gram, long p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("non-dyadic lattices need an odd prime");
  BlockSplitting split = block_split(gram, p);
  std::map<int, std::pair<int, int>> by_scale;  // scale -> (rank, nonsquare parity)
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    const Rational& d = split.form(i, i);
    int s = ord_p(d, p);
    auto& [rank, bit] = by_scale[s];
    ++rank;
    bit ^= square_class(d / pow_p(p, s), p).u;
  }
  std::vector<JordanBlock> blocks;
  for (const auto& [s, rb] : by_scale) blocks.push_back({s, rb.first, rb.second == 1});
  return make_jordan(p, std::move(blocks));
}

std::vector<Rational> diagonal_model(const JordanLatticeND& L) {
  require_concrete(L);
  std::vector<Rational> out;
  const Rational d(delta(L.p));
  for (const auto& b : L.blocks) {
    Rational s = pow_p(L.p, b.scale_exp);
    for (int i = 0; i < b.rank; ++i) out.push_back(i + 1 == b.rank && b.nonsquare_det ? s * d : s);
  }
  return out;
}

Matrix gram_of(const JordanLatticeND& L) { return Matrix::diagonal(diagonal_model(L)); }

SpaceInv space_of(const JordanLatticeND& L) { return inv_of_diagonal(diagonal_model(L), Place::finite(L.p)); }

std::vector<std::vector<Rational>> testing_set_models(long p, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("testing sets here need an odd prime");
  const Rational d(delta(p)), pi(p), one(1);
  if (k == 1) return {{one}, {d}, {pi}, {d * pi}};
  if (k == 2)
    return {{one, -one}, {one, -d}, {pi, -d * pi}, {one, -pi}, {d, -d * pi}, {one, -d * pi}, {d, -pi}};
  auto pad = [k](std::vector<Rational> tail) {
    std::vector<Rational> v(k - tail.size(), Rational(1));
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
  };
  return {pad({}),           pad({-d, pi, -d * pi}), pad({d}),       pad({-one, pi, -d * pi}),
          pad({-one, -pi}),  pad({-d, -d * pi}),     pad({-one, -d * pi}), pad({-d, -pi})};
}

std::vector<JordanLatticeND> testing_set(long p, int k) {
  std::vector<JordanLatticeND> out;
  for (const auto& m : testing_set_models(p, k)) out.push_back(jordan_from_gram(Matrix::diagonal(m), p));
  return out;
}

CriterionVerdict k_universal_criterion(const JordanLatticeND& L, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k == 1) throw std::invalid_argument("k = 1 is decided through the testing set and the oracle");
  check_blocks(L.blocks);
  if (L.blocks.front().scale_exp < 0) throw std::domain_error("criterion applies to integral lattices");
  if (L.blocks.front().scale_exp != 0) return {false, "no unimodular component"};
  const JordanBlock& m1 = L.blocks.front();
  const JordanBlock* m2 = L.blocks.size() > 1 && L.blocks[1].scale_exp == 1 ? &L.blocks[1] : nullptr;
  const int r1 = m1.rank;
  const int r2 = m2 ? m2->rank : 0;
  if (k == 2) {
    if (r1 >= 5) return {true, "unimodular rank >= 5"};
    if (r1 == 4 && !m1.nonsquare_det) return {true, "unimodular rank 4 with square determinant"};
    if (r1 == 4) {
      if (r2 >= 1) return {true, "unimodular rank 4 with det Delta and p-modular rank >= 1"};
      return {false, "unimodular rank 4 with det Delta and no p-modular component"};
    }
    if (r1 == 3) {
      if (r2 >= 2) return {true, "unimodular rank 3 and p-modular rank >= 2"};
      return {false, "unimodular rank 3 and p-modular rank < 2"};
    }
    return {false, "unimodular rank < 3"};
  }
  if (r1 >= k + 3) return {true, "unimodular rank >= k+3"};
  if (r1 == k + 2) {
    if (r2 >= 1) return {true, "unimodular rank k+2 and p-modular rank >= 1"};
    return {false, "unimodular rank k+2 and no p-modular component"};
  }
  if (r1 == k + 1) {
    if (r2 >= 2) return {true, "unimodular rank k+1 and p-modular rank >= 2"};
    return {false, "unimodular rank k+1 and p-modular rank < 2"};
  }
  return {false, "unimodular rank < k+1"};
}

bool is_k_universal(const JordanLatticeND& L, int k) { return k_universal_criterion(L, k).universal; }

TestingVerdict is_k_universal_via_testing(const Matrix& gram, long p, int k, OracleConfig cfg) {
  cfg.p = p;
  TestingVerdict v;
  const auto models = testing_set_models(p, k);
  for (std::size_t i = 0; i < models.size(); ++i) {
    ++v.oracle_calls;
    OracleResult r = represents_lattice(Matrix::diagonal(models[i]), gram, cfg);
    if (r.answer == Answer::undecided)
      throw UndecidedError("oracle undecided at precision p^" + std::to_string(r.precision) + ": " + r.reason,
                           r.precision);
    if (r.answer == Answer::no) {
      v.failing_index = i;
      v.failing_model = models[i];
      return v;
    }
  }
  v.universal = true;
  return v;
}

TestingVerdict is_k_universal_via_testing(const JordanLatticeND& L, int k, OracleConfig cfg) {
  require_concrete(L);
  return is_k_universal_via_testing(gram_of(L), L.p, k, cfg);
}

JordanLatticeND maximal_binary_anisotropic(long p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("needs an odd prime");
  return jordan_from_gram(Matrix::diagonal({Rational(p), Rational(-delta(p) * p)}), p);
}

JordanLatticeND parse_jordan(std::string_view text, long p) {
  std::vector<JordanBlock> blocks;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string part;
    while (std::getline(is, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("Jordan block must be scale:rank:det, got '" + item + "'");
    JordanBlock b;
    try {
      std::size_t used = 0;
      b.scale_exp = std::stoi(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument("");
      b.rank = std::stoi(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed integers in Jordan block '" + item + "'");
    }
    if (parts[2] == "1")
      b.nonsquare_det = false;
    else if (parts[2] == "D")
      b.nonsquare_det = true;
    else
      throw std::invalid_argument("Jordan determinant must be 1 or D, got '" + parts[2] + "'");
    blocks.push_back(b);
  }
  return make_jordan(p, std::move(blocks));
}

std::string format_jordan(const JordanLatticeND& L) {
  std::string out;
  for (std::size_t i = 0; i < L.blocks.size(); ++i) {
    const auto& b = L.blocks[i];
    if (i) out += ',';
    out += std::to_string(b.scale_exp) + ":" + std::to_string(b.rank) + ":" + (b.nonsquare_det ? "D" : "1");
  }
  return out;
}

}  // namespace qlat
