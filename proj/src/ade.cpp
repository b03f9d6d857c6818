#include "k3/ade.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace k3 {

static std::vector<std::pair<int, int>> edges_of(char type, int n) {
  std::vector<std::pair<int, int>> e;
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
      break;
    case 'D':
      if (n < 4) throw parse_error("D_n needs n >= 4");
      for (int i = 0; i + 1 <= n - 3; ++i) e.push_back({i, i + 1});
      e.push_back({n - 3, n - 2});
      e.push_back({n - 3, n - 1});
      break;
    case 'E': {
      if (n < 6 || n > 8) throw parse_error("E_n needs n in {6,7,8}");
      for (int i = 0; i + 1 < n - 1; ++i) e.push_back({i, i + 1});
      e.push_back({2, n - 1});  // branch node
      break;
    }
    default:
      throw parse_error("unknown ADE type");
  }
  return e;
}

IMat cartan_gram(char type, int n) {
  IMat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  for (auto& [a, b] : edges_of(type, n)) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return g;
}

std::string AdeConfiguration::symbol() const {
  // canonical: E's, D's, A's, rank descending, with multiplicities
  std::vector<std::pair<std::string, int>> runs;
  for (auto& c : comps) {
    std::string s = std::string(1, c.type) + std::to_string(c.n);
    if (!runs.empty() && runs.back().first == s)
      ++runs.back().second;
    else
      runs.push_back({s, 1});
  }
  std::string out;
  for (auto& [s, k] : runs) {
    if (!out.empty()) out += "+";
    if (k > 1) out += std::to_string(k);
    out += s;
  }
  return out;
}

static bool comp_before(const AdeComponent& a, const AdeComponent& b) {
  auto key = [](char t) { return t == 'E' ? 0 : (t == 'D' ? 1 : 2); };
  if (key(a.type) != key(b.type)) return key(a.type) < key(b.type);
  return a.n > b.n;
}

AdeConfiguration root_lattice_from_ade(const std::string& spec) {
  AdeConfiguration phi;
  std::vector<AdeComponent> comps;
  std::string term;
  std::istringstream in(spec);
  while (std::getline(in, term, '+')) {
    // strip spaces
    term.erase(std::remove(term.begin(), term.end(), ' '), term.end());
    if (term.empty()) throw parse_error("empty ADE term");
    size_t i = 0;
    int mult = 0;
    while (i < term.size() && isdigit(term[i])) mult = mult * 10 + (term[i++] - '0');
    if (mult == 0) mult = 1;
    if (i >= term.size()) throw parse_error("malformed ADE term: " + term);
    char type = term[i++];
    if (type != 'A' && type != 'D' && type != 'E') throw parse_error("bad ADE type in: " + term);
    int n = 0;
    if (i >= term.size()) throw parse_error("missing rank in: " + term);
    while (i < term.size() && isdigit(term[i])) n = n * 10 + (term[i++] - '0');
    if (i != term.size() || n <= 0) throw parse_error("malformed ADE term: " + term);
    if (type == 'A' && n < 1) throw parse_error("A_n needs n >= 1");
    if (type == 'D' && n < 4) throw parse_error("D_n needs n >= 4");
    if (type == 'E' && (n < 6 || n > 8)) throw parse_error("E_n needs n in {6,7,8}");
    for (int k = 0; k < mult; ++k) comps.push_back(AdeComponent{type, n, 0});
  }
  std::sort(comps.begin(), comps.end(), comp_before);
  int total = 0;
  for (auto& c : comps) {
    c.offset = total;
    total += c.n;
  }
  phi.comps = comps;
  phi.L.gram = IMat(total, total);
  for (auto& c : comps) {
    IMat g = cartan_gram(c.type, c.n);
    for (int i = 0; i < c.n; ++i)
      for (int j = 0; j < c.n; ++j) phi.L.gram(c.offset + i, c.offset + j) = g(i, j);
  }
  return phi;
}

bool perm_preserves_gram(const AdeConfiguration& phi, const Perm& g) {
  int n = phi.rank();
  if (int(g.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (phi.L.gram(g[i], g[j]) != phi.L.gram(i, j)) return false;
  return true;
}

static Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

std::vector<Perm> aut_generators(const AdeConfiguration& phi) {
  int n = phi.rank();
  std::vector<Perm> gens;
  // diagram automorphisms per component
  for (auto& c : phi.comps) {
    int o = c.offset;
    if (c.type == 'A' && c.n >= 2) {
      Perm p = identity_perm(n);
      for (int i = 0; i < c.n; ++i) p[o + i] = o + c.n - 1 - i;
      gens.push_back(p);
    } else if (c.type == 'D' && c.n == 4) {
      // tips are 0, 2, 3 around center 1
      Perm p = identity_perm(n);
      p[o + 0] = o + 2; p[o + 2] = o + 0;
      gens.push_back(p);
      Perm q = identity_perm(n);
      q[o + 2] = o + 3; q[o + 3] = o + 2;
      gens.push_back(q);
    } else if (c.type == 'D' && c.n >= 5) {
      Perm p = identity_perm(n);
      p[o + c.n - 2] = o + c.n - 1;
      p[o + c.n - 1] = o + c.n - 2;
      gens.push_back(p);
    } else if (c.type == 'E' && c.n == 6) {
      Perm p = identity_perm(n);
      p[o + 0] = o + 4; p[o + 4] = o + 0;
      p[o + 1] = o + 3; p[o + 3] = o + 1;
      gens.push_back(p);
    }
  }
  // swaps of equal components
  for (size_t i = 0; i + 1 < phi.comps.size(); ++i) {
    auto &a = phi.comps[i], &b = phi.comps[i + 1];
    if (a.type != b.type || a.n != b.n) continue;
    Perm p = identity_perm(n);
    for (int k = 0; k < a.n; ++k) {
      p[a.offset + k] = b.offset + k;
      p[b.offset + k] = a.offset + k;
    }
    gens.push_back(p);
  }
  for (auto& g : gens)
    if (!perm_preserves_gram(phi, g)) throw std::logic_error("aut_generators: bad generator");
  return gens;
}

Int aut_order(const AdeConfiguration& phi) {
  auto diagram_order = [](const AdeComponent& c) -> Int {
    if (c.type == 'A') return c.n >= 2 ? 2 : 1;
    if (c.type == 'D') return c.n == 4 ? 6 : 2;
    if (c.type == 'E') return c.n == 6 ? 2 : 1;
    return 1;
  };
  Int total = 1;
  size_t i = 0;
  while (i < phi.comps.size()) {
    size_t j = i;
    while (j < phi.comps.size() && phi.comps[j].type == phi.comps[i].type &&
           phi.comps[j].n == phi.comps[i].n)
      ++j;
    Int k = Int(long(j - i));
    Int fact = 1;
    for (Int t = 2; t <= k; ++t) fact *= t;
    Int d = diagram_order(phi.comps[i]);
    Int dp = 1;
    for (long t = 0; t < long(j - i); ++t) dp *= d;
    total *= fact * dp;
    i = j;
  }
  return total;
}

std::vector<Elt> dual_root_classes(const AdeConfiguration& phi, const DiscPresentation& D) {
  int n = phi.rank();
  // per component: all dual vectors w (including 0) with -<w,w> <= 2
  struct Cand {
    std::vector<Rat> vec;  // component coords
    Rat weight;            // -<w,w> >= 0
  };
  std::vector<std::vector<Cand>> per_comp;
  for (auto& c : phi.comps) {
    IMat g = cartan_gram(c.type, c.n);
    QMat ginv = inverse(to_rational(g));  // Gram of the dual in dual-basis coords
    auto sv = short_vectors(-ginv, Rat(2));
    std::vector<Cand> cands;
    cands.push_back(Cand{std::vector<Rat>(c.n, Rat(0)), Rat(0)});
    for (auto& v : sv) {
      // w = v in dual-basis coords; its L-basis coords are v * ginv
      std::vector<Rat> vec(c.n, Rat(0));
      Rat norm(0);
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j)
          if (v[i] != 0) vec[j] += Rat(v[i]) * ginv(i, j);
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j)
          if (vec[i] != 0 && vec[j] != 0) norm += vec[i] * Rat(g(i, j)) * vec[j];
      cands.push_back(Cand{vec, -norm});
      std::vector<Rat> neg(c.n);
      for (int i = 0; i < c.n; ++i) neg[i] = -vec[i];
      cands.push_back(Cand{neg, -norm});
    }
    per_comp.push_back(std::move(cands));
  }
  std::set<std::string> seen;
  std::vector<Elt> out;
  std::vector<Rat> w(n, Rat(0));
  std::function<void(size_t, Rat)> rec = [&](size_t ci, Rat budget) {
    if (ci == phi.comps.size()) {
      if (budget != 0) return;
      Elt cls = D.project(w);
      bool zero = true;
      for (auto& x : cls)
        if (x != 0) zero = false;
      if (zero) return;
      std::string key;
      for (auto& x : cls) { key += x.get_str(); key += ','; }
      if (seen.insert(key).second) out.push_back(cls);
      return;
    }
    auto& c = phi.comps[ci];
    for (auto& cand : per_comp[ci]) {
      if (cand.weight > budget) continue;
      for (int i = 0; i < c.n; ++i) w[c.offset + i] = cand.vec[i];
      rec(ci + 1, budget - cand.weight);
    }
    for (int i = 0; i < c.n; ++i) w[c.offset + i] = 0;
  };
  rec(0, Rat(2));
  return out;
}

std::vector<Int> fiber_marks(char type, int n) {
  IntegralLattice L{cartan_gram(type, n)};
  auto roots = roots_enumerate(L);
  // highest root: all coordinates >= 0 with maximal coefficient sum
  std::vector<Int> best;
  Int best_sum = -1;
  for (auto& r : roots) {
    bool nonneg = true;
    Int s = 0;
    for (auto& x : r) {
      if (x < 0) { nonneg = false; break; }
      s += x;
    }
    if (nonneg && s > best_sum) { best_sum = s; best = r; }
  }
  if (best.empty()) throw std::logic_error("fiber_marks: no highest root");
  // invariants: theta0 = v_f - sum m_i theta_i is a root completing the
  // affine diagram: <theta0,theta0> = -2 and <theta0, theta_i> in {0,1}
  IMat g = cartan_gram(type, n);
  Int norm = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += best[i] * g(i, j) * best[j];
  if (norm != -2) throw std::logic_error("fiber_marks: highest root norm check failed");
  for (int i = 0; i < n; ++i) {
    Int ip = 0;
    for (int j = 0; j < n; ++j) ip -= best[j] * g(j, i);
    // affine A1 carries a double bond; all other affine diagrams are simply laced
    if (n == 1 ? ip != 2 : (ip != 0 && ip != 1))
      throw std::logic_error("fiber_marks: affine pattern check failed");
  }
  return best;
}

}  // namespace k3
