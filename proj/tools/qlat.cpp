#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qlat/dyadic_lattice.hpp"
#include "qlat/local_arith.hpp"
#include "qlat/nondyadic_lattice.hpp"
#include "qlat/quad_field.hpp"
#include "qlat/quad_space.hpp"
#include "qlat/reference_checks.hpp"
#include "qlat/rep_oracle.hpp"

using json = nlohmann::ordered_json;
using namespace qlat;

namespace {

constexpr int kSchemaVersion = 1;

// Exit status for a verified inconsistency.
struct Inconsistent {};

json labeled(bool value, const std::string& decided_by) { return {{"value", value}, {"decided_by", decided_by}}; }

json envelope(const std::string& command, json input, json result) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"input", std::move(input)}, {"result", std::move(result)}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

/// Rows separated by ';', entries by ','.
Matrix parse_gram(const std::string& s) {
  std::vector<Rational> entries;
  auto rows = split(s, ';');
  for (const auto& row : rows) {
    auto r = parse_list(row);
    if (r.size() != rows.size()) throw std::invalid_argument("Gram matrix must be square: " + s);
    entries.insert(entries.end(), r.begin(), r.end());
  }
  Matrix g = Matrix::from_row_major(entries);
  if (!g.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
  if (g.determinant() == 0) throw std::invalid_argument("Gram matrix must be nonsingular");
  return g;
}

Place parse_place(const std::string& s) {
  if (s == "inf" || s == "real" || s == "0") return Place::real();
  std::size_t used = 0;
  long p = std::stol(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad place: " + s);
  return Place::finite(p);
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json space_json(const SpaceInv& v) {
  json j = {{"place", v.place.to_string()}, {"dim", v.dim}};
  if (v.place.is_real()) {
    j["pos"] = v.pos;
    j["neg"] = v.neg;
  } else {
    j["det"] = v.det.to_string();
    j["hasse"] = v.hasse;
  }
  return j;
}

json dyadic_json(const DyadicLattice& L) {
  Matrix g = gram_of(L);
  auto sn = scale_norm(g);
  return {{"blocks", format_blocks(L)},
          {"gram", g.to_string()},
          {"scale_exp", sn.scale_exp},
          {"norm_exp", sn.norm_exp},
          {"space", space_json(inv_of_gram(g, Place::finite(2)))}};
}

std::string oracle_label(const OracleResult& r, long p) {
  return "oracle@" + std::to_string(p) + "^" + std::to_string(r.precision);
}

OracleConfig make_cfg(long p, int precision) {
  OracleConfig cfg;
  cfg.p = p;
  if (precision > 0) cfg.precision = precision;
  return cfg;
}

json profile_json(const QuadFieldProfile& P) {
  json ext = json::array();
  for (long c : unramified_quadratic_extensions(P))
    ext.push_back({{"class", c}, {"dyadic_split", labeled(splits_completely_at_dyadic(c, P), "descent to Q_2")}});
  bool h_even = class_number_even(P);
  bool lng1 = admits_classic_1_lng(P);
  bool in_table = in_no_classic_1_lng_table(P);
  json j = {{"m", P.m},
            {"d_F", P.d_F},
            {"real", P.is_real},
            {"odd_ramified", P.odd_ramified},
            {"p_stars", P.p_stars},
            {"dyadic", to_string(P.dyadic)},
            {"genus_field_generators", P.p_stars},
            {"extensions", ext},
            {"h_even", labeled(h_even, "unramified quadratic extension inside the extended genus field")},
            {"lng2", labeled(h_even, "class number parity")},
            {"lng1", labeled(lng1, "unramified quadratic extension split at every dyadic prime")},
            {"lng1_table", labeled(!in_table, "congruence table")},
            {"consistent", lng1 == !in_table}};
  if (h_even) j["lng2_genus"] = kTwoLngGenus;
  return j;
}

std::string join(const std::vector<long>& v) {
  std::string out;
  for (long x : v) out += (out.empty() ? "" : " ") + std::to_string(x);
  return out;
}

void write_csv(const std::vector<AtlasRow>& rows, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << "m,d_F,real,ramified_primes,extensions,h_even,lng2,lng1_first_principles,lng1_table,consistent\n";
  for (const auto& r : rows) {
    f << r.profile.m << ',' << r.profile.d_F << ',' << r.profile.is_real << ',' << join(r.profile.odd_ramified)
      << ',' << join(r.extensions) << ',' << r.h_even << ',' << r.lng2 << ',' << r.lng1_first_principles << ','
      << r.lng1_table << ',' << r.consistent << '\n';
  }
}

void print_table(const std::vector<AtlasRow>& rows) {
  std::printf("%8s %8s %5s %-16s %-12s %6s %5s %5s %5s %s\n", "m", "d_F", "real", "ramified", "extensions", "h_even",
              "lng2", "lng1", "table", "ok");
  for (const auto& r : rows)
    std::printf("%8ld %8ld %5d %-16s %-12s %6d %5d %5d %5d %s\n", r.profile.m, r.profile.d_F, r.profile.is_real,
                join(r.profile.odd_ramified).c_str(), join(r.extensions).c_str(), r.h_even, r.lng2,
                r.lng1_first_principles, r.lng1_table, r.consistent ? "yes" : "NO");
}

int run_atlas(long max_abs, const std::string& csv, bool check, bool table) {
  auto rows = atlas(max_abs);
  std::vector<long> bad;
  for (const auto& r : rows)
    if (!r.consistent) bad.push_back(r.profile.m);
  if (!csv.empty()) write_csv(rows, csv);
  if (table) {
    print_table(rows);
  } else {
    json jr = json::array();
    for (const auto& r : rows)
      jr.push_back({{"m", r.profile.m},
                    {"d_F", r.profile.d_F},
                    {"real", r.profile.is_real},
                    {"ramified_primes", r.profile.odd_ramified},
                    {"extensions", r.extensions},
                    {"h_even", r.h_even},
                    {"lng2", r.lng2},
                    {"lng1_first_principles", r.lng1_first_principles},
                    {"lng1_table", r.lng1_table},
                    {"consistent", r.consistent}});
    emit(envelope("atlas", {{"max", max_abs}, {"check_table", check}},
                  {{"fields", rows.size()}, {"inconsistent", bad}, {"rows", jr}}));
  }
  if (check && !bad.empty()) throw Inconsistent{};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local k-universality of lattices and k-LNG existence over quadratic fields"};
  app.require_subcommand(1);

  std::string place_s, diag_s, jordan_s, gram_s, blocks_s, l_s, m_s, value_s, csv;
  long p = 0, m = 0, atlas_max = 0;
  int k = 0, precision = 0, e = 1;
  bool oracle_flag = false, check_table = false, table = false, as_json = false;

  auto* local_space = app.add_subcommand("local-space", "Invariants and k-universality of a diagonal space");
  local_space->add_option("--p", place_s, "Prime, or inf for the real place")->required();
  local_space->add_option("--diag", diag_s, "Comma-separated diagonal entries")->required();
  local_space->add_option("--k", k, "Rank to test")->required()->check(CLI::PositiveNumber);

  auto* local_lattice = app.add_subcommand("local-lattice", "k-universality of a lattice over Z_p");
  local_lattice->add_option("--p", p, "Prime")->required();
  local_lattice->add_option("--k", k, "Rank to test")->required()->check(CLI::PositiveNumber);
  auto* jordan_opt = local_lattice->add_option("--jordan", jordan_s, "scale:rank:det triples, odd p");
  auto* gram_opt = local_lattice->add_option("--gram", gram_s, "Gram matrix, rows separated by ';'");
  auto* blocks_opt = local_lattice->add_option("--blocks", blocks_s, "d:a;p:g:x:h block list, p = 2");
  jordan_opt->excludes(gram_opt)->excludes(blocks_opt);
  gram_opt->excludes(blocks_opt);
  local_lattice->add_flag("--oracle", oracle_flag, "Cross-check against the testing set with the oracle");
  local_lattice->add_option("--precision", precision, "Oracle precision exponent");

  auto* testing = app.add_subcommand("testing-set", "Minimal testing set for k-universality");
  testing->add_option("--p", p, "Prime")->required();
  testing->add_option("--k", k, "Rank")->required()->check(CLI::PositiveNumber);

  auto* maximal = app.add_subcommand("maximal-binary", "Maximal binary lattices");
  maximal->add_option("--p", p, "Prime")->required();
  maximal->add_option("--e", e, "Ramification index (p = 2)")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "Decide representation of a lattice or value over Z_p");
  oracle->add_option("--p", p, "Prime")->required();
  oracle->add_option("--M", m_s, "Gram matrix of the representing lattice")->required();
  auto* l_opt = oracle->add_option("--L", l_s, "Gram matrix of the represented lattice");
  auto* v_opt = oracle->add_option("--value", value_s, "Rational value to represent");
  l_opt->excludes(v_opt);
  oracle->add_option("--precision", precision, "Precision exponent");

  auto* quadfield = app.add_subcommand("quadfield", "Profile and LNG verdicts for Q(sqrt m)");
  auto* m_opt = quadfield->add_option("-m", m, "Squarefree radicand");
  auto* qa_opt = quadfield->add_option("--atlas", atlas_max, "Scan all squarefree m with 2 <= |m| <= N");
  m_opt->excludes(qa_opt);
  quadfield->add_flag("--check-table", check_table, "Exit 1 if the table disagrees with first principles");

  auto* atlas_cmd = app.add_subcommand("atlas", "Scan quadratic fields");
  atlas_cmd->add_option("--max", atlas_max, "Largest |m|")->required();
  atlas_cmd->add_option("--csv", csv, "Also write rows to this CSV file");
  atlas_cmd->add_flag("--check-table", check_table, "Exit 1 on any inconsistency");
  atlas_cmd->add_flag("--table", table, "Plain table instead of JSON");

  auto* verify = app.add_subcommand("verify-paper", "Recompute the published worked examples");
  verify->add_flag("--json", as_json, "JSON instead of one line per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*local_space) {
      Place v = parse_place(place_s);
      SpaceInv inv = inv_of_diagonal(parse_list(diag_s), v);
      std::string by = v.is_real() ? "signature" : "space classification";
      emit(envelope("local-space", {{"p", place_s}, {"diag", diag_s}, {"k", k}},
                    {{"space", space_json(inv)}, {"isotropic", labeled(is_isotropic(inv), by)},
                     {"universal", labeled(space_k_universal(inv, k), by)}}));
      return 0;
    }

    if (*local_lattice) {
      json input = {{"p", p}, {"k", k}};
      if (p == 2) {
        if (!jordan_s.empty()) throw std::invalid_argument("use --blocks or --gram at p = 2");
        if (blocks_s.empty() && gram_s.empty()) throw std::invalid_argument("--blocks or --gram is required");
        Matrix g = blocks_s.empty() ? parse_gram(gram_s) : gram_of(parse_blocks(blocks_s));
        input[blocks_s.empty() ? "gram" : "blocks"] = blocks_s.empty() ? gram_s : blocks_s;
        if (k != 2 || g.rows() != 4)
          throw std::invalid_argument("at p = 2 only k = 2 on rank-4 lattices is supported");
        auto v = quaternary_2_universal(g);
        json result = {{"scale_exp", v.scale_norm.scale_exp},
                       {"norm_exp", v.scale_norm.norm_exp},
                       {"half_modular", v.half_modular},
                       {"hyperbolic_space", v.hyperbolic_space},
                       {"universal", labeled(v.universal, "dyadic quaternary criterion")}};
        if (oracle_flag) {
          OracleConfig cfg = make_cfg(2, precision > 0 ? precision : 8);
          json checks = json::array();
          bool all = true;
          for (const auto& L : testing_set_2_universal(1)) {
            auto r = represents_lattice(gram_of(L), g, cfg);
            if (r.answer == Answer::undecided) throw UndecidedError(r.reason, r.precision);
            all = all && r.answer == Answer::yes;
            checks.push_back({{"lattice", format_blocks(L)}, {"answer", to_string(r.answer)},
                              {"decided_by", oracle_label(r, 2)}});
          }
          result["oracle_cross_check"] = {{"universal", all}, {"agrees", all == v.universal}, {"tests", checks}};
          emit(envelope("local-lattice", input, result));
          if (all != v.universal) throw Inconsistent{};
          return 0;
        }
        emit(envelope("local-lattice", input, result));
        return 0;
      }

      JordanLatticeND L;
      if (!jordan_s.empty()) {
        L = parse_jordan(jordan_s, p);
        input["jordan"] = jordan_s;
      } else if (!gram_s.empty()) {
        L = jordan_from_gram(parse_gram(gram_s), p);
        input["gram"] = gram_s;
      } else {
        throw std::invalid_argument("--jordan or --gram is required for odd p");
      }
      json result = {{"jordan", format_jordan(L)}, {"space", space_json(space_of(L))}};
      std::optional<bool> structural;
      if (k >= 2) {
        auto v = k_universal_criterion(L, k);
        structural = v.universal;
        result["universal"] = labeled(v.universal, "Jordan criterion: " + v.clause);
      }
      if (k == 1 || oracle_flag) {
        OracleConfig cfg = make_cfg(p, precision);
        auto t = is_k_universal_via_testing(L, k, cfg);
        json tj = {{"universal", t.universal}, {"oracle_calls", t.oracle_calls}};
        if (t.failing_index) tj["failing_model"] = rationals(t.failing_model);
        if (k == 1) result["universal"] = labeled(t.universal, "testing set with oracle");
        if (structural) tj["agrees"] = *structural == t.universal;
        result["oracle_cross_check"] = tj;
        emit(envelope("local-lattice", input, result));
        if (structural && *structural != t.universal) throw Inconsistent{};
        return 0;
      }
      emit(envelope("local-lattice", input, result));
      return 0;
    }

    if (*testing) {
      json list = json::array();
      if (p == 2) {
        if (k != 2) throw std::invalid_argument("at p = 2 only the k = 2 testing set is available");
        for (const auto& L : testing_set_2_universal(1)) list.push_back(dyadic_json(L));
      } else {
        auto models = testing_set_models(p, k);
        for (const auto& mdl : models) {
          auto J = jordan_from_gram(Matrix::diagonal(mdl), p);
          list.push_back({{"diag", rationals(mdl)}, {"jordan", format_jordan(J)}});
        }
      }
      emit(envelope("testing-set", {{"p", p}, {"k", k}}, {{"count", list.size()}, {"lattices", list}}));
      return 0;
    }

    if (*maximal) {
      json result;
      if (p == 2) {
        json list = json::array();
        for (const auto& d : maximal_binary_list(e)) {
          json item = {{"descriptor", d.to_string()}};
          if (e == 1) {
            DyadicLattice L = materialize(d);
            item["lattice"] = dyadic_json(L);
            item["maximal"] = norm_maximal(gram_of(L), 2);
          }
          list.push_back(item);
        }
        result = {{"count", list.size()}, {"descriptors", list}};
        if (e == 1) result["distinct_spaces"] = testing_set_2_universal(1).size();
      } else {
        auto L = maximal_binary_anisotropic(p);
        Matrix g = gram_of(L);
        result = {{"jordan", format_jordan(L)},
                  {"diag", rationals(diagonal_model(L))},
                  {"space", space_json(space_of(L))},
                  {"anisotropic", !is_isotropic(space_of(L))},
                  {"maximal", maximality_scan(g, p)}};
      }
      emit(envelope("maximal-binary", {{"p", p}, {"e", e}}, result));
      return 0;
    }

    if (*oracle) {
      if (l_s.empty() && value_s.empty()) throw std::invalid_argument("--L or --value is required");
      OracleConfig cfg = make_cfg(p, precision);
      Matrix M = parse_gram(m_s);
      OracleResult r = l_s.empty() ? represents_value(M, parse_rational(value_s), cfg)
                                   : represents_lattice(parse_gram(l_s), M, cfg);
      json result = {{"answer", to_string(r.answer)},
                     {"decided_by", oracle_label(r, p)},
                     {"precision", r.precision},
                     {"required_precision", r.required_precision},
                     {"scale_shift", r.scale_shift},
                     {"reason", r.reason}};
      if (r.witness) result["witness"] = r.witness->to_string();
      json input = {{"p", p}, {"M", m_s}};
      if (l_s.empty())
        input["value"] = value_s;
      else
        input["L"] = l_s;
      emit(envelope("oracle", input, result));
      return 0;
    }

    if (*quadfield) {
      if (*qa_opt) return run_atlas(atlas_max, "", check_table, false);
      if (!*m_opt) throw std::invalid_argument("-m or --atlas is required");
      emit(envelope("quadfield", {{"m", m}}, profile_json(profile(m))));
      return 0;
    }

    if (*atlas_cmd) return run_atlas(atlas_max, csv, check_table, table);

    if (*verify) {
      auto checks = run_reference_checks();
      bool ok = true;
      json list = json::array();
      for (const auto& c : checks) {
        ok = ok && c.passed;
        if (as_json) {
          list.push_back({{"topic", c.topic}, {"claim", c.claim}, {"passed", c.passed}, {"detail", c.detail}});
        } else {
          std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.topic << ": " << c.claim;
          if (!c.passed) std::cout << " (" << c.detail << ")";
          std::cout << "\n";
        }
      }
      if (as_json)
        emit(envelope("verify-paper", json::object(), {{"passed", ok}, {"checks", list}}));
      else
        std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const Inconsistent&) {
    return 1;
  } catch (const UndecidedError& err) {
    std::cerr << "error: undecided at precision " << err.precision() << ": " << err.what() << "\n";
    return 2;
  } catch (const OracleResourceError& err) {
    std::cerr << "error: search state " << err.state_size() << " exceeds the cap: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
