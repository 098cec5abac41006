// Command-line surface for the pop-stack-with-bypass toolkit.
//
// Exit codes: 0 success / full pass, 1 verification failure, 2 usage or
// parse error, 3 size-guard violation (override with --force).

#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "popsort/classes.hpp"
#include "popsort/enumeration.hpp"
#include "popsort/machines.hpp"
#include "popsort/preimage.hpp"
#include "popsort/verify.hpp"
#include "popsort/words_paths.hpp"

namespace {

using nlohmann::json;
using namespace popsort;

int default_workers() {
  if (const char* env = std::getenv("POPSORT_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string join_perms(const std::vector<Permutation>& ps) {
  std::ostringstream os;
  for (const auto& p : ps) os << p.str() << '\n';
  return os.str();
}

PatternBasis parse_basis_arg(const std::string& spec) {
  PatternBasis b;
  std::string cur;
  std::vector<std::string> parts;
  for (char c : spec) {
    if (c == ',') {
      if (!cur.empty()) parts.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  for (const auto& part : parts) {
    BarredPattern bp = parse_barred_pattern(part);
    if (bp.barred.empty())
      b.classical.push_back(bp.pattern);
    else
      b.barred.push_back(std::move(bp));
  }
  return b;
}

PatternBasis named_basis(const std::string& name) {
  if (name == "psb") {
    PatternBasis b;
    b.classical = {parse_permutation("231"), parse_permutation("4213")};
    return b;
  }
  if (name == "popstack") {
    PatternBasis b;
    b.classical = {parse_permutation("231"), parse_permutation("312")};
    return b;
  }
  if (name == "psbp") return psbp_basis();
  if (name == "parallel-nobypass") return parallel_nobypass_basis();
  if (name == "stack-psb") return composition_basis(CompositionBasisId::stack_after_psb);
  if (name == "que-psb") return composition_basis(CompositionBasisId::queue_after_psb);
  if (name == "bub-psb") return composition_basis(CompositionBasisId::bubble_after_psb);
  if (name == "psb-que") return composition_basis(CompositionBasisId::psb_after_queue);
  if (name == "psb-bub") return composition_basis(CompositionBasisId::psb_after_bubble);
  throw std::invalid_argument("unknown basis name: " + name);
}

std::string basis_lines(const PatternBasis& b) {
  std::ostringstream os;
  for (const auto& p : b.classical)
    os << (p.size() <= 9 ? p.compact() : p.str()) << '\n';
  for (const auto& bp : b.barred) os << bp.str() << '\n';
  return os.str();
}

json basis_json(const PatternBasis& b) {
  json j;
  j["classical"] = json::array();
  for (const auto& p : b.classical) j["classical"].push_back(p.entries());
  j["barred"] = json::array();
  for (const auto& bp : b.barred) {
    json jb;
    jb["pattern"] = bp.pattern.entries();
    jb["barred_positions"] = std::vector<int>(bp.barred.begin(), bp.barred.end());
    j["barred"].push_back(std::move(jb));
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pop-stack-with-bypass sorting toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  int workers = default_workers();
  app.add_option("--workers", workers, "worker threads for exhaustive sweeps");

  std::string format = "text";
  app.add_option("--format", format, "output format: text, json, csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  // ---- sort ----
  auto* sort_cmd = app.add_subcommand("sort", "run a sorting machine on a permutation");
  std::string sort_machine = "psb", sort_perm;
  bool sort_trace = false;
  sort_cmd->add_option("--machine", sort_machine, "psb|stack|queue|bubble|popstack|psbp|parallel:<k>[:nobypass]");
  sort_cmd->add_flag("--trace", sort_trace, "emit a JSON trace");
  sort_cmd->add_option("perm", sort_perm, "input permutation")->required();

  // ---- sortable ----
  auto* sortable_cmd = app.add_subcommand("sortable", "decide device sortability (DFS oracle)");
  std::string sortable_machine = "psb", sortable_perm;
  bool sortable_algorithm = false;
  sortable_cmd->add_option("--machine", sortable_machine, "machine id");
  sortable_cmd->add_flag("--algorithm", sortable_algorithm,
                         "use the deterministic algorithm instead of the oracle");
  sortable_cmd->add_option("perm", sortable_perm, "input permutation")->required();

  // ---- preimages ----
  auto* pre_cmd = app.add_subcommand("preimages", "all permutations mapping to the target under psb");
  std::string pre_perm;
  bool pre_brute = false, pre_force = false;
  pre_cmd->add_option("perm", pre_perm, "target permutation")->required();
  pre_cmd->add_flag("--brute", pre_brute, "use the exhaustive oracle instead");
  pre_cmd->add_flag("--force", pre_force, "override the size guard");

  // ---- word/path conversions ----
  auto* p2w = app.add_subcommand("perm2word", "sorting word of a permutation");
  std::string p2w_arg;
  p2w->add_option("perm", p2w_arg)->required();
  auto* w2p = app.add_subcommand("word2perm", "sortable permutation with the given sorting word");
  std::string w2p_arg;
  w2p->add_option("word", w2p_arg)->required();
  auto* p2m = app.add_subcommand("perm2path", "sorting path of a permutation");
  std::string p2m_arg;
  p2m->add_option("perm", p2m_arg)->required();
  auto* m2w = app.add_subcommand("path2word", "sorting word of a restricted Motzkin path");
  std::string m2w_arg;
  m2w->add_option("path", m2w_arg)->required();

  // ---- basis ----
  auto* basis_cmd = app.add_subcommand("basis", "print a named basis or a class-preimage verdict");
  std::string basis_name;
  basis_cmd->add_option("name", basis_name,
                        "psb|popstack|psbp|parallel-nobypass|stack-psb|que-psb|bub-psb|"
                        "psb-que|psb-bub|preimage:<rho>")
      ->required();

  // ---- discover-basis ----
  auto* disc_cmd = app.add_subcommand("discover-basis", "minimal unsortable patterns by oracle search");
  std::string disc_machine = "psb";
  int disc_len = 6;
  bool disc_force = false;
  disc_cmd->add_option("--machine", disc_machine, "machine id");
  disc_cmd->add_option("--max-len", disc_len, "maximum pattern length");
  disc_cmd->add_flag("--force", disc_force, "override the length guard");

  // ---- enumerate ----
  auto* enum_cmd = app.add_subcommand("enumerate", "exact counts by sweep, avoidance, or generating function");
  std::string enum_machine, enum_basis, enum_gf, enum_composition;
  bool enum_words = false, enum_oracle = false, enum_force = false;
  int enum_max_n = 8;
  enum_cmd->add_option("--machine", enum_machine, "count machine-sortable permutations");
  enum_cmd->add_option("--basis", enum_basis, "count Av_n(basis); comma-separated patterns, '!' marks bars");
  enum_cmd->add_option("--gf", enum_gf, "expand a shipped GF: words|bub-psb|psb-bub|parallel");
  enum_cmd->add_option("--composition", enum_composition,
                       "sweep a composition against its reference: stack-psb|que-psb|bub-psb|psb-que|psb-bub");
  enum_cmd->add_flag("--words", enum_words, "table of |W_n|, |M_n|, F(2n-1)");
  bool enum_preimage_counts = false;
  enum_cmd->add_flag("--preimage-counts", enum_preimage_counts,
                     "table of c0/c1/c2 closed forms vs brute-force histograms");
  enum_cmd->add_flag("--oracle", enum_oracle, "count by DFS oracle instead of the algorithm");
  enum_cmd->add_option("--max-n", enum_max_n, "largest size to count");
  enum_cmd->add_flag("--force", enum_force, "override size guards");

  // ---- compose ----
  auto* comp_cmd = app.add_subcommand("compose", "run machines in sequence");
  std::string comp_machines, comp_perm;
  comp_cmd->add_option("--machines", comp_machines, "comma-separated machine ids, first runs first")
      ->required();
  comp_cmd->add_option("perm", comp_perm)->required();

  // ---- psbw ----
  auto* psbw_cmd = app.add_subcommand("psbw", "sort a k-regular word with the word variant");
  std::string psbw_word;
  int psbw_k = 1;
  psbw_cmd->add_option("--k", psbw_k, "regularity (each letter appears exactly k times)");
  psbw_cmd->add_option("word", psbw_word, "digits 0..9")->required();

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
  std::string verify_suite = "all";
  int verify_max_n = -1;
  bool verify_force = false;
  verify_cmd->add_option("--suite", verify_suite, "suite name or 'all'");
  verify_cmd->add_option("--max-n", verify_max_n, "override the suite's sweep bound");
  verify_cmd->add_flag("--force", verify_force, "override size guards");

  // ---- conjecture ----
  auto* conj_cmd = app.add_subcommand("conjecture", "simple-sortable counts vs the conjectured closed form");
  int conj_max_n = 9;
  bool conj_force = false;
  conj_cmd->add_option("--max-n", conj_max_n);
  conj_cmd->add_flag("--force", conj_force, "override the size guard");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sort_cmd) {
      MachineConfig cfg = parse_machine(sort_machine);
      SortOutcome out = run_machine(cfg, parse_permutation(sort_perm), sort_trace);
      if (format == "json") {
        json j;
        j["output"] = out.output.entries();
        j["sorted"] = out.sorted;
        if (out.trace) j["trace"] = json::parse(trace_to_json(*out.trace));
        std::cout << j.dump() << '\n';
      } else {
        std::cout << out.output.str() << (out.sorted ? " sorted" : " unsorted") << '\n';
        if (sort_trace && out.trace) std::cout << trace_to_json(*out.trace) << '\n';
      }
      return 0;
    }
    if (*sortable_cmd) {
      MachineConfig cfg = parse_machine(sortable_machine);
      Permutation p = parse_permutation(sortable_perm);
      bool s = sortable_algorithm ? run_machine(cfg, p).sorted : dfs_sortable(p, cfg);
      if (format == "json") {
        json j;
        j["machine"] = cfg.name();
        j["sortable"] = s;
        std::cout << j.dump() << '\n';
      } else {
        std::cout << (s ? "sortable" : "unsortable") << '\n';
      }
      return 0;
    }
    if (*pre_cmd) {
      Permutation target = parse_permutation(pre_perm);
      std::vector<Permutation> ps =
          pre_brute ? brute_preimages(target, pre_force) : preimages(target);
      std::sort(ps.begin(), ps.end());
      if (format == "json") {
        json j = json::array();
        for (const auto& p : ps) j.push_back(p.entries());
        std::cout << j.dump() << '\n';
      } else {
        std::cout << join_perms(ps);
      }
      return 0;
    }
    if (*p2w) {
      std::cout << perm_to_word(parse_permutation(p2w_arg)) << '\n';
      return 0;
    }
    if (*w2p) {
      std::cout << word_to_perm(w2p_arg).str() << '\n';
      return 0;
    }
    if (*p2m) {
      std::cout << perm_to_path(parse_permutation(p2m_arg)) << '\n';
      return 0;
    }
    if (*m2w) {
      std::cout << path_to_word(m2w_arg) << '\n';
      return 0;
    }
    if (*basis_cmd) {
      if (basis_name.rfind("preimage:", 0) == 0) {
        Pattern rho = parse_permutation(basis_name.substr(9));
        BasisVerdict v = preimage_class_verdict(rho);
        if (v.is_class) {
          if (format == "json")
            std::cout << basis_json(v.basis).dump() << '\n';
          else
            std::cout << basis_lines(v.basis);
        } else {
          if (format == "json") {
            json j;
            j["is_class"] = false;
            j["sigma"] = v.witness->first.entries();
            j["pi"] = v.witness->second.entries();
            std::cout << j.dump() << '\n';
          } else {
            std::cout << "not a permutation class; witness sigma = "
                      << v.witness->first.str() << ", pi = "
                      << v.witness->second.str() << '\n';
          }
        }
        return 0;
      }
      PatternBasis b = named_basis(basis_name);
      if (format == "json")
        std::cout << basis_json(b).dump() << '\n';
      else
        std::cout << basis_lines(b);
      return 0;
    }
    if (*disc_cmd) {
      auto basis = discover_basis(parse_machine(disc_machine), disc_len, disc_force);
      std::sort(basis.begin(), basis.end());
      if (format == "json") {
        json j = json::array();
        for (const auto& p : basis) j.push_back(p.entries());
        std::cout << j.dump() << '\n';
      } else {
        for (const auto& p : basis)
          std::cout << (p.size() <= 9 ? p.compact() : p.str()) << '\n';
      }
      return 0;
    }
    if (*enum_cmd) {
      if (!enum_gf.empty()) {
        RationalGF gf;
        if (enum_gf == "words") gf = gf_sorting_words();
        else if (enum_gf == "bub-psb") gf = gf_bub_after_psb();
        else if (enum_gf == "psb-bub") gf = gf_psb_after_bubble();
        else if (enum_gf == "parallel") gf = gf_parallel_bypass();
        else throw std::invalid_argument("unknown gf: " + enum_gf);
        auto coeffs = gf_expand(gf, enum_max_n + 1);
        if (format == "json") {
          json j = json::array();
          for (const auto& c : coeffs) j.push_back(c.str());
          std::cout << j.dump() << '\n';
        } else if (format == "csv") {
          std::cout << "n,coefficient\n";
          for (size_t i = 0; i < coeffs.size(); ++i)
            std::cout << i << ',' << coeffs[i] << '\n';
        } else {
          for (size_t i = 0; i < coeffs.size(); ++i)
            std::cout << "x^" << i << ": " << coeffs[i] << '\n';
        }
        return 0;
      }
      if (enum_words) {
        std::cout << word_count_csv(enum_max_n);
        return 0;
      }
      if (enum_preimage_counts) {
        std::cout << preimage_count_csv(enum_max_n, enum_force);
        return 0;
      }
      if (!enum_composition.empty()) {
        auto rep = composition_counts(parse_composition(enum_composition),
                                      enum_max_n, enum_force, workers);
        std::cout << (format == "csv" ? rep.csv() : rep.text());
        return 0;
      }
      std::ostringstream csv;
      csv << "n,count\n";
      std::ostringstream text;
      for (int n = 1; n <= enum_max_n; ++n) {
        BigInt c;
        if (!enum_basis.empty())
          c = count_av(parse_basis_arg(enum_basis), n, enum_force, workers);
        else if (!enum_machine.empty())
          c = count_sortable_by(parse_machine(enum_machine), n, enum_oracle,
                                enum_force, workers);
        else
          throw std::invalid_argument(
              "enumerate needs one of --machine, --basis, --gf, --composition, --words");
        csv << n << ',' << c << '\n';
        text << "n = " << n << ": " << c << '\n';
      }
      std::cout << (format == "csv" ? csv.str() : text.str());
      return 0;
    }
    if (*comp_cmd) {
      std::vector<MachineConfig> machines;
      std::string cur;
      for (char c : comp_machines + ",") {
        if (c == ',') {
          if (!cur.empty()) machines.push_back(parse_machine(cur)), cur.clear();
        } else {
          cur += c;
        }
      }
      SortOutcome out = compose(machines, parse_permutation(comp_perm));
      std::cout << out.output.str() << (out.sorted ? " sorted" : " unsorted") << '\n';
      return 0;
    }
    if (*psbw_cmd) {
      std::vector<int> w;
      for (char c : psbw_word) {
        if (c < '0' || c > '9')
          throw std::invalid_argument("psbw: word must be digits 0..9");
        w.push_back(c - '0');
      }
      auto out = psbw(w, psbw_k);
      for (int x : out.output) std::cout << x;
      std::cout << (out.sorted ? " sorted" : " unsorted") << '\n';
      return 0;
    }
    if (*verify_cmd) {
      SuiteOptions opts;
      opts.max_n = verify_max_n;
      opts.force = verify_force;
      opts.workers = workers;
      std::vector<std::string> suites =
          verify_suite == "all" ? suite_names() : std::vector<std::string>{verify_suite};
      bool all_pass = true;
      for (const auto& s : suites) {
        SuiteResult res = run_suite(s, opts);
        all_pass &= res.pass();
        if (format == "csv") {
          for (const auto& c : res.checks)
            std::cout << res.suite << ',' << c.name << ','
                      << (c.pass ? "pass" : "fail") << '\n';
        } else if (format == "json") {
          json j;
          j["suite"] = res.suite;
          j["pass"] = res.pass();
          j["checks"] = json::array();
          for (const auto& c : res.checks)
            j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
          std::cout << j.dump() << '\n';
        } else {
          std::cout << format_suite(res);
        }
      }
      return all_pass ? 0 : 1;
    }
    if (*conj_cmd) {
      auto rep = conjecture_simple_psbp(conj_max_n, conj_force, workers);
      std::cout << (format == "csv" ? rep.csv() : rep.text());
      return 0;
    }
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
