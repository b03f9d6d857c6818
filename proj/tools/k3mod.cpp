// Command-line front end: connected components of moduli of elliptic K3
// surfaces of a fixed combinatorial type, plus small lattice utilities.
#include <CLI11.hpp>

#include "k3/moduli.hpp"
#include "k3/padic.hpp"
#include "k3/tables.hpp"
#include "k3/torsion.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;
using namespace k3;

static const char* kVersion = "k3mod 1.0";

// ---------- cache ----------

struct Cache {
  fs::path dir;
  bool enabled = false;

  static std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
      out += (isalnum(uint8_t(c)) || c == '-' || c == '.') ? c : '_';
    return out;
  }

  std::optional<std::string> get(const std::string& key) const {
    if (!enabled) return std::nullopt;
    std::ifstream in(dir / (sanitize(key) + ".json"));
    if (!in) return std::nullopt;
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
  }

  void put(const std::string& key, const std::string& value) const {
    if (!enabled) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path final = dir / (sanitize(key) + ".json");
    fs::path tmp = final;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp);
      out << value;
    }
    fs::rename(tmp, final, ec);  // atomic publish
    if (ec) fs::remove(tmp, ec);
  }
};

static MarkingGroupSpec parse_group(const std::string& g, const AdeConfiguration& phi) {
  if (g == "aut") return MarkingGroupSpec::full();
  if (g == "trivial") return MarkingGroupSpec::trivial();
  // else: a file with one permutation per line (images of root indices)
  std::ifstream in(g);
  if (!in) throw parse_error("group: expected aut, trivial, or a readable file");
  MarkingGroupSpec spec;
  spec.kind = MarkingGroupSpec::Explicit;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Perm p;
    int v;
    while (ls >> v) p.push_back(v);
    if (int(p.size()) != phi.rank()) throw parse_error("group file: permutation length mismatch");
    spec.gens.push_back(p);
  }
  return spec;
}

static IMat read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open gram file " + path);
  std::vector<std::vector<Int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) row.push_back(Int(tok));
    if (!row.empty()) rows.push_back(row);
  }
  if (rows.empty()) throw parse_error("empty gram file");
  IMat g(int(rows.size()), int(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw parse_error("gram file is not square");
    for (size_t j = 0; j < rows[i].size(); ++j) g(int(i), int(j)) = rows[i][j];
  }
  return g;
}

int main(int argc, char** argv) {
  CLI::App app{"moduli components of elliptic K3 surfaces"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();  // global flags may follow the subcommand

  std::string cache_dir = "./.k3cache";
  if (const char* env = getenv("K3MOD_CACHE")) cache_dir = env;
  int jobs = 1;
  long nu0 = 0;
  int max_retries = 8;
  app.add_option("--cache-dir", cache_dir, "result cache directory");
  app.add_option("--jobs", jobs, "worker threads for table commands");
  app.add_option("--nu0", nu0, "initial p-adic accuracy override");
  app.add_option("--max-retries", max_retries, "accuracy doublings before giving up");

  // components
  auto* cmd_comp = app.add_subcommand("components", "components for one (Phi, A, G)");
  std::string phi_s, tor_s = "[1]", group_s = "aut";
  bool as_json = false, no_cache = false;
  cmd_comp->add_option("--phi", phi_s, "ADE type, e.g. E8+A9+A1 or 2A5+4A2")->required();
  cmd_comp->add_option("--tor", tor_s, "torsion group, e.g. [1], [2], [3,3]");
  cmd_comp->add_option("--group", group_s, "aut | trivial | file with permutations");
  cmd_comp->add_flag("--json", as_json, "emit the JSON report");
  cmd_comp->add_flag("--no-cache", no_cache, "bypass the result cache");

  // tables
  auto* cmd_tab = app.add_subcommand("tables", "recompute rows of Table I / II");
  int which = 1;
  std::string rows_s = "";
  bool check = false;
  cmd_tab->add_option("which", which, "1 or 2")->required();
  cmd_tab->add_option("--rows", rows_s, "row range, e.g. 1-10 or 7 (default: all)");
  cmd_tab->add_flag("--check", check, "diff recomputed rows against the bundled data");

  // spin
  auto* cmd_spin = app.add_subcommand("spin", "Psi_p of one discriminant-form automorphism");
  long spin_p = 3, spin_r = 0;
  std::string spin_orders, spin_q, spin_auto, spin_d;
  cmd_spin->add_option("--p", spin_p)->required();
  cmd_spin->add_option("--orders", spin_orders, "comma list of generator orders")->required();
  cmd_spin->add_option("--q", spin_q, "row-major F_q entries, comma separated rationals")->required();
  cmd_spin->add_option("--auto", spin_auto, "row-major T0 entries")->required();
  cmd_spin->add_option("--rank", spin_r, "rank of the ambient lattice (default len(D))");
  cmd_spin->add_option("--disc", spin_d, "discriminant of the ambient lattice");

  // fqf
  auto* cmd_fqf = app.add_subcommand("fqf", "discriminant form of a gram matrix");
  std::string gram_path;
  bool show_brown = false, show_normal = false;
  cmd_fqf->add_option("--gram", gram_path, "whitespace-separated integer matrix file")->required();
  cmd_fqf->add_flag("--brown", show_brown, "print the Brown invariant");
  cmd_fqf->add_flag("--normal", show_normal, "print the normal form tags");

  // genus
  auto* cmd_gen = app.add_subcommand("genus", "genus nonemptiness / definite representatives");
  std::string sig_s = "2,0";
  std::string gram2_path;
  bool triv = false;
  cmd_gen->add_option("--sig", sig_s, "signature s+,s-");
  cmd_gen->add_option("--gram", gram2_path, "lattice whose negated discriminant form is used");
  cmd_gen->add_flag("--trivial", triv, "use the trivial discriminant form");

  // torsion
  auto* cmd_tor = app.add_subcommand("torsion", "narrowness signatures per orbit");
  std::string tphi, ttor = "[2]";
  cmd_tor->add_option("--phi", tphi)->required();
  cmd_tor->add_option("--tor", ttor);

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Cache cache{fs::path(cache_dir), true};
  try {
    if (*cmd_comp) {
      AdeConfiguration phi = root_lattice_from_ade(phi_s);
      auto G = parse_group(group_s, phi);
      auto tor = parse_torsion(tor_s);
      std::string tor_canon = "[";
      for (size_t i = 0; i < tor.size(); ++i) tor_canon += (i ? "," : "") + tor[i].get_str();
      if (tor.empty()) tor_canon += "1";
      tor_canon += "]";
      std::string key = phi.symbol() + "|" + tor_canon + "|" +
                        (G.kind == MarkingGroupSpec::Full ? "aut"
                         : G.kind == MarkingGroupSpec::Trivial ? "trivial" : "explicit") +
                        "|" + kVersion;
      bool cacheable = !no_cache && G.kind != MarkingGroupSpec::Explicit;
      if (as_json && cacheable) {
        if (auto hit = cache.get(key)) {
          std::cout << *hit << "\n";
          return 0;
        }
      }
      PsiOptions opts;
      opts.nu0_override = nu0;
      opts.max_retries = max_retries;
      ComponentReport rep = compute_components(phi_s, tor, G, opts);
      std::string json = report_json(rep);
      if (cacheable) cache.put(key, json);
      if (as_json)
        std::cout << json << "\n";
      else
        std::cout << report_text(rep);
      return 0;
    }
    if (*cmd_tab) {
      int lo = 1, hi = which == 1 ? int(table1().size()) : int(table2().size());
      if (!rows_s.empty()) {
        auto dash = rows_s.find('-');
        if (dash == std::string::npos) lo = hi = std::stoi(rows_s);
        else {
          lo = std::stoi(rows_s.substr(0, dash));
          hi = std::stoi(rows_s.substr(dash + 1));
        }
      }
      std::vector<int> rows;
      for (int i = lo; i <= hi; ++i) rows.push_back(i);
      std::vector<std::string> outputs(rows.size());
      std::vector<std::vector<std::string>> diffs(rows.size());
      std::atomic<size_t> next{0};
      auto worker = [&]() {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= rows.size()) break;
          int no = rows[i];
          if (which == 1) {
            auto& row = table1()[no - 1];
            outputs[i] = format_table1_row(row);
            if (check) diffs[i] = check_table1_row(row);
          } else {
            auto& row = table2()[no - 1];
            outputs[i] = format_table2_row(row);
            if (check) diffs[i] = check_table2_row(row);
          }
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      bool mismatch = false;
      for (size_t i = 0; i < rows.size(); ++i) {
        std::cout << outputs[i] << "\n";
        for (auto& d : diffs[i]) {
          std::cerr << "MISMATCH: " << d << "\n";
          mismatch = true;
        }
      }
      return mismatch ? 1 : 0;
    }
    if (*cmd_spin) {
      std::vector<Int> orders;
      {
        std::istringstream in(spin_orders);
        std::string tok;
        while (std::getline(in, tok, ',')) orders.push_back(Int(tok));
      }
      int l = int(orders.size());
      QMat F(l, l);
      {
        std::istringstream in(spin_q);
        std::string tok;
        for (int i = 0; i < l * l; ++i) {
          if (!std::getline(in, tok, ',')) throw parse_error("spin: F_q needs l*l entries");
          F.a[i] = Rat(tok);
        }
      }
      IMat T0(l, l);
      {
        std::istringstream in(spin_auto);
        std::string tok;
        for (int i = 0; i < l * l; ++i) {
          if (!std::getline(in, tok, ',')) throw parse_error("spin: T0 needs l*l entries");
          T0.a[i] = Int(tok);
        }
      }
      Fqf q(orders, F);
      q.normalize_entries();
      q.check_valid();
      long r = spin_r > 0 ? spin_r : l;
      Int d;
      if (spin_d.empty()) {
        // default: the discriminant class of the companion lattice itself
        Rat dl = Rat(1) / det(q.F);
        d = Int(dl.get_num()) * Int(dl.get_den());
      } else {
        d = Int(spin_d);
      }
      PsiOptions opts;
      opts.nu0_override = nu0;
      opts.max_retries = max_retries;
      GammaElement g = psi_p(q, T0, r, d, Int(spin_p), opts);
      std::cout << "det=" << (g.det < 0 ? "-1" : "+1") << " spin=" << g.spin.str() << "\n";
      return 0;
    }
    if (*cmd_fqf) {
      IntegralLattice L{read_gram_file(gram_path)};
      auto D = fqf_from_gram(L);
      std::cout << "orders:";
      for (auto& d : D.q.orders) std::cout << " " << d.get_str();
      std::cout << "\n";
      if (show_brown) std::cout << "brown: " << brown_invariant(D.q) << "\n";
      if (show_normal) {
        for (auto& p : fqf_primes(D.q)) {
          auto part = p_part(D.q, p);
          std::cout << "p=" << p.get_str() << ":";
          for (auto& t : normal_form_tags(part.q, p)) std::cout << " " << t.str(p);
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (*cmd_gen) {
      auto comma = sig_s.find(',');
      if (comma == std::string::npos) throw parse_error("genus: --sig wants s+,s-");
      GenusSymbol g;
      g.s_plus = std::stoi(sig_s.substr(0, comma));
      g.s_minus = std::stoi(sig_s.substr(comma + 1));
      if (triv)
        g.q = fqf_trivial();
      else if (!gram2_path.empty())
        g.q = negate(fqf_from_gram(IntegralLattice{read_gram_file(gram2_path)}).q);
      else
        throw parse_error("genus: need --gram or --trivial");
      bool ok = genus_nonempty(g);
      std::cout << (ok ? "non-empty" : "empty") << "\n";
      if (ok && g.s_plus == 2 && g.s_minus == 0) {
        for (auto& f : definite_genus_representatives(g.q.group_order(), g.q))
          std::cout << "[" << f.a.get_str() << "," << f.b.get_str() << "," << f.c.get_str()
                    << "]\n";
      }
      return 0;
    }
    if (*cmd_tor) {
      AdeConfiguration phi = root_lattice_from_ade(tphi);
      DiscPresentation D = fqf_from_gram(phi.L);
      auto E = enumerate_E(phi, D, parse_torsion(ttor));
      auto orbits = g_orbits_and_stabilizers(phi, D, E, aut_generators(phi));
      for (size_t i = 0; i < orbits.size(); ++i) {
        std::cout << "orbit " << (i + 1) << ":";
        for (auto& s : narrowness_report(phi, D, orbits[i].rep)) std::cout << " {" << s << "}";
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
