#include "k3/moduli.hpp"
#include "k3/torsion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace k3 {

std::vector<Int> parse_torsion(const std::string& s) {
  std::string t = s;
  t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' '; }), t.end());
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw parse_error("torsion: want [a] or [a,b]");
  t = t.substr(1, t.size() - 2);
  std::vector<Int> out;
  std::istringstream in(t);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) throw parse_error("torsion: empty entry");
    Int v(tok);
    if (v < 1) throw parse_error("torsion: entries must be >= 1");
    if (v > 1) out.push_back(v);
  }
  // convention a | b
  std::sort(out.begin(), out.end());
  for (size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i + 1] % out[i] != 0) throw parse_error("torsion: invariant factors must divide");
  return out;
}

static std::string elt_str(const Elt& e) {
  std::string s;
  for (auto& x : e) { s += x.get_str(); s += ','; }
  return s;
}

static std::string subgroup_canonical_key(const Subgroup& s) {
  std::vector<std::string> ks;
  for (auto& e : s.elements) ks.push_back(elt_str(e));
  std::sort(ks.begin(), ks.end());
  std::string out;
  for (auto& k : ks) { out += k; out += ';'; }
  return out;
}

std::vector<Subgroup> enumerate_E(const AdeConfiguration& phi, const DiscPresentation& D,
                                  const std::vector<Int>& A) {
  int rphi = phi.rank();
  if (rphi > 18) throw std::invalid_argument("enumerate_E: rank > 18");
  auto cands = isotropic_subgroups_of_type(D.q, A);
  auto rbar = dual_root_classes(phi, D);
  std::set<std::string> bad;
  for (auto& c : rbar) bad.insert(elt_str(c));
  std::vector<Subgroup> out;
  for (auto& K : cands) {
    bool roots_ok = true;
    for (auto& e : K.elements) {
      bool zero = true;
      for (auto& x : e)
        if (x != 0) zero = false;
      if (!zero && bad.count(elt_str(e))) { roots_ok = false; break; }
    }
    if (!roots_ok) continue;
    // genus of (2, 18 - r) with -q_M
    auto DM = subquotient(D.q, orthogonal_subgroup(D.q, K.gens), K.gens);
    GenusSymbol g{2, 18 - rphi, negate(DM.q)};
    if (!genus_nonempty(g)) continue;
    out.push_back(K);
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return subgroup_canonical_key(a) < subgroup_canonical_key(b);
  });
  return out;
}

// permutation matrix action on D: class coords -> class coords
static IMat perm_action_on_D(const AdeConfiguration& phi, const DiscPresentation& D,
                             const Perm& g) {
  int n = phi.rank();
  int l = D.q.len();
  IMat A(l, l);
  for (int a = 0; a < l; ++a) {
    std::vector<Rat> img(n, Rat(0));
    for (int i = 0; i < n; ++i)
      if (D.gens(a, i) != 0) img[g[i]] += D.gens(a, i);
    Elt cls = D.project(img);
    for (int j = 0; j < l; ++j) A(a, j) = cls[j];
  }
  return A;
}

static Elt apply_D_matrix(const Fqf& q, const Elt& x, const IMat& A) {
  Elt out(q.len(), Int(0));
  for (int i = 0; i < q.len(); ++i)
    if (x[i] != 0)
      for (int j = 0; j < q.len(); ++j) out[j] += x[i] * A(i, j);
  return q.reduce(out);
}

static Perm compose(const Perm& g, const Perm& h) {  // apply g then h
  Perm r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[i] = h[g[i]];
  return r;
}

static Perm invert(const Perm& g) {
  Perm r(g.size());
  for (size_t i = 0; i < g.size(); ++i) r[g[i]] = int(i);
  return r;
}

std::vector<OrbitData> g_orbits_and_stabilizers(const AdeConfiguration& phi,
                                                const DiscPresentation& D,
                                                const std::vector<Subgroup>& E,
                                                const std::vector<Perm>& Ggens) {
  std::vector<IMat> gen_mats;
  for (auto& g : Ggens) gen_mats.push_back(perm_action_on_D(phi, D, g));
  std::map<std::string, size_t> key_to_idx;
  for (size_t i = 0; i < E.size(); ++i) key_to_idx[subgroup_canonical_key(E[i])] = i;
  std::vector<bool> used(E.size(), false);
  std::vector<OrbitData> orbits;
  int n = phi.rank();
  Perm id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  for (size_t start = 0; start < E.size(); ++start) {
    if (used[start]) continue;
    OrbitData od;
    od.rep = E[start];
    std::map<std::string, Perm> transversal;  // key -> word mapping rep to that element
    std::string k0 = subgroup_canonical_key(E[start]);
    transversal[k0] = id;
    od.key = k0;
    std::vector<std::pair<std::string, Subgroup>> frontier{{k0, E[start]}};
    used[start] = true;
    std::set<std::string> stab_seen;
    while (!frontier.empty()) {
      std::vector<std::pair<std::string, Subgroup>> next;
      for (auto& [key, sub] : frontier) {
        for (size_t gi = 0; gi < Ggens.size(); ++gi) {
          std::vector<Elt> imgs;
          for (auto& e : sub.gens) imgs.push_back(apply_D_matrix(D.q, e, gen_mats[gi]));
          Subgroup img = subgroup_from_gens(D.q, imgs);
          std::string k2 = subgroup_canonical_key(img);
          Perm word = compose(transversal[key], Ggens[gi]);
          auto it = transversal.find(k2);
          if (it == transversal.end()) {
            transversal[k2] = word;
            od.key = std::min(od.key, k2);
            auto idx = key_to_idx.find(k2);
            if (idx == key_to_idx.end())
              throw std::logic_error("g_orbits: image left the candidate set");
            used[idx->second] = true;
            next.push_back({k2, img});
          } else {
            // Schreier generator
            Perm s = compose(word, invert(it->second));
            std::string sk;
            for (int v : s) { sk += std::to_string(v); sk += ','; }
            if (stab_seen.insert(sk).second) od.stab_gens.push_back(s);
          }
        }
      }
      frontier = std::move(next);
    }
    od.orbit_size = transversal.size();
    orbits.push_back(std::move(od));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const OrbitData& a, const OrbitData& b) { return a.key < b.key; });
  return orbits;
}

// Schreier generators of the kernel of Stab(M) -> Aut(K): second stage of
// orbit-stabilizer, acting on the tuple of images of the K generators.
std::vector<Perm> kernel_on_K_generators(const AdeConfiguration& phi, const DiscPresentation& D,
                                         const OrbitData& od) {
  if (od.rep.gens.empty() || od.stab_gens.empty()) return od.stab_gens;
  std::vector<IMat> mats;
  for (auto& s : od.stab_gens) mats.push_back(perm_action_on_D(phi, D, s));
  auto state_of = [&](const std::vector<Elt>& imgs) {
    std::string s;
    for (auto& e : imgs)
      for (auto& x : e) { s += x.get_str(); s += ','; }
    return s;
  };
  std::vector<Elt> id_state;
  for (auto& e : od.rep.gens) id_state.push_back(D.q.reduce(e));
  std::map<std::string, std::pair<Perm, std::vector<Elt>>> transversal;
  int n = phi.rank();
  Perm id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  transversal[state_of(id_state)] = {id, id_state};
  std::vector<std::string> frontier{state_of(id_state)};
  std::vector<Perm> kernel;
  std::set<std::string> kseen;
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (auto& key : frontier) {
      auto [word, state] = transversal[key];
      for (size_t gi = 0; gi < od.stab_gens.size(); ++gi) {
        std::vector<Elt> imgs;
        for (auto& e : state) imgs.push_back(apply_D_matrix(D.q, e, mats[gi]));
        std::string k2 = state_of(imgs);
        Perm w2 = compose(word, od.stab_gens[gi]);
        auto it = transversal.find(k2);
        if (it == transversal.end()) {
          transversal[k2] = {w2, imgs};
          next.push_back(k2);
        } else {
          Perm s = compose(w2, invert(it->second.first));
          std::string sk;
          for (int v : s) { sk += std::to_string(v); sk += ','; }
          if (kseen.insert(sk).second) kernel.push_back(s);
        }
      }
    }
    frontier = std::move(next);
  }
  return kernel;
}

IMat gbar_image_of_perm(const AdeConfiguration& phi, const DiscPresentation& D,
                        const SubQuotient& DM, const Perm& g) {
  IMat A = perm_action_on_D(phi, D, g);
  int k = DM.q.len();
  IMat out(k, k);
  for (int a = 0; a < k; ++a) {
    Elt img = apply_D_matrix(D.q, DM.gen_lifts.row(a), A);
    Elt coords = sq_express(DM, img);
    for (int j = 0; j < k; ++j) out(a, j) = coords[j];
  }
  if (!fqf_is_automorphism(DM.q, out))
    throw std::logic_error("gbar_image: generator does not preserve M");
  return out;
}

namespace {

std::string mat_key(const IMat& m) {
  std::string s;
  for (auto& x : m.a) { s += x.get_str(); s += ','; }
  return s;
}

}  // namespace

ComponentReport compute_components(const std::string& phi_spec, const std::vector<Int>& A,
                                   const MarkingGroupSpec& G, const PsiOptions& psi_opts) {
  AdeConfiguration phi = root_lattice_from_ade(phi_spec);
  int rphi = phi.rank();
  if (rphi > 18) throw std::invalid_argument("compute_components: rank(Phi) > 18");
  ComponentReport rep;
  rep.phi = phi.symbol();
  rep.torsion = A;
  rep.group = G.kind == MarkingGroupSpec::Full ? "aut"
              : G.kind == MarkingGroupSpec::Trivial ? "trivial" : "explicit";

  DiscPresentation D = fqf_from_gram(phi.L);
  auto E = enumerate_E(phi, D, A);
  if (E.empty()) {
    rep.realized = false;
    rep.total = 0;
    rep.total_mod_conj = 0;
    return rep;
  }
  // algebraic classes are always Aut(Phi)-orbits; the requested G enters via
  // Gbar = image of Stab(M) cap G
  auto aut_gens = aut_generators(phi);
  auto orbits = g_orbits_and_stabilizers(phi, D, E, aut_gens);
  Int aut_ord = aut_order(phi);

  // explicit G: enumerate its elements once
  std::vector<Perm> Gelems;
  if (G.kind == MarkingGroupSpec::Explicit) {
    for (auto& g : G.gens)
      if (!perm_preserves_gram(phi, g))
        throw std::invalid_argument("compute_components: group generator is not a configuration automorphism");
    std::set<std::string> seen;
    Perm id(rphi);
    for (int i = 0; i < rphi; ++i) id[i] = i;
    std::vector<Perm> frontier{id};
    auto pkey = [](const Perm& p) {
      std::string s;
      for (int v : p) { s += std::to_string(v); s += ','; }
      return s;
    };
    seen.insert(pkey(id));
    Gelems.push_back(id);
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (auto& x : frontier)
        for (auto& g : G.gens) {
          Perm y = compose(x, g);
          if (seen.insert(pkey(y)).second) {
            Gelems.push_back(y);
            next.push_back(y);
          }
          if (Gelems.size() > 2000000) throw capacity_error("explicit group too large");
        }
      frontier = std::move(next);
    }
  }

  for (auto& od : orbits) {
    ClassResult cr;
    cr.key = od.key;
    cr.stab_order = aut_ord / Int(long(od.orbit_size));
    auto Kperp = orthogonal_subgroup(D.q, od.rep.gens);
    SubQuotient DM = subquotient(D.q, Kperp, od.rep.gens);
    Fqf qG = negate(DM.q);
    // Gbar: image of the subgroup of Stab(M) acting trivially on M/L(Phi).
    // The published tables pin this choice (see row 89 of Table I); the
    // stabilizer elements moving K inside itself do not merge components.
    std::vector<IMat> gbar;
    std::set<std::string> gseen;
    auto add_gbar = [&](const Perm& p) {
      IMat m = gbar_image_of_perm(phi, D, DM, p);
      if (gseen.insert(mat_key(m)).second) gbar.push_back(m);
    };
    auto acts_trivially_on_K = [&](const Perm& p) {
      IMat Ag = perm_action_on_D(phi, D, p);
      for (auto& e : od.rep.gens)
        if (apply_D_matrix(D.q, e, Ag) != D.q.reduce(e)) return false;
      return true;
    };
    if (G.kind == MarkingGroupSpec::Full) {
      for (auto& s : kernel_on_K_generators(phi, D, od)) add_gbar(s);
    } else if (G.kind == MarkingGroupSpec::Explicit) {
      // elements of G stabilizing the representative and fixing K pointwise
      for (auto& g : Gelems) {
        std::vector<Elt> imgs;
        IMat Ag = perm_action_on_D(phi, D, g);
        for (auto& e : od.rep.gens) imgs.push_back(apply_D_matrix(D.q, e, Ag));
        Subgroup img = subgroup_from_gens(D.q, imgs);
        if (subgroup_canonical_key(img) != subgroup_canonical_key(od.rep)) continue;
        if (acts_trivially_on_K(g)) add_gbar(g);
      }
    }
    cr.gbar_size = gbar.size();
    {
      // |Gbar| by closure, capped
      std::set<std::string> closure;
      std::vector<IMat> frontier;
      IMat id = IMat::identity(DM.q.len());
      closure.insert(mat_key(id));
      frontier.push_back(id);
      bool capped = false;
      while (!frontier.empty() && !capped) {
        std::vector<IMat> next;
        for (auto& x : frontier) {
          for (auto& g : gbar) {
            IMat y = x * g;
            for (int i = 0; i < y.r; ++i)
              for (int j = 0; j < y.c; ++j) y(i, j) = mod_pos(y(i, j), DM.q.orders[j]);
            if (closure.insert(mat_key(y)).second) next.push_back(y);
            if (closure.size() > 20000) { capped = true; break; }
          }
          if (capped) break;
        }
        frontier = std::move(next);
      }
      cr.gbar_order = capped ? 0 : closure.size();
    }
    cr.narrowness = narrowness_report(phi, D, od.rep);

    if (rphi == 18) {
      cr.branch = "definite";
      Int detT = DM.q.group_order();
      auto forms = definite_genus_representatives(detT, qG);
      if (forms.empty())
        throw std::logic_error("definite branch: empty genus contradicts existence check");
      Int count = 0, conj = 0;
      for (auto& f : forms) {
        auto oc = definite_orbits(f, qG, gbar);
        if (oc.moved_orbits % 2 != 0)
          throw std::logic_error("definite branch: odd number of moved orbits");
        cr.forms.push_back(f);
        cr.rc.push_back({oc.real_orbits, oc.moved_orbits});
        count += oc.real_orbits + oc.moved_orbits;
        conj += oc.real_orbits + oc.moved_orbits / 2;
      }
      cr.count = count;
      cr.count_mod_conj = conj;
    } else {
      cr.branch = "mm";
      Int d = DM.q.group_order();
      long r = 20 - rphi;
      Int dsigned = ((18 - rphi) % 2 == 0) ? d : -d;
      auto primes = fqf_primes(qG);
      std::vector<F2Subspace> sigmas;
      std::vector<FqfPart> parts;
      for (auto& p : primes) {
        parts.push_back(p_part(qG, p));
        auto [ok, J] = zp_exists_with(r, dsigned, parts.back().q, p);
        if (!ok) throw std::logic_error("mm branch: local lattice missing despite genus check");
        sigmas.push_back(sigma_sharp(J));
      }
      // K' shortcut: compute without gammas first
      auto cc0 = component_group(primes, sigmas, {});
      if (cc0.dim_over_kprime == 0 || gbar.empty()) {
        cr.count = cc0.count;
        cr.count_mod_conj = cc0.count_mod_conj;
        cr.mm_dim = cc0.dim;
        cr.mm_conj_dim = cc0.conj_dim;
      } else {
        std::vector<GammaDVector> gammas;
        for (auto& g : gbar) gammas.push_back(gamma_of(qG, primes, g, r, dsigned, psi_opts));
        auto cc = component_group(primes, sigmas, gammas);
        cr.count = cc.count;
        cr.count_mod_conj = cc.count_mod_conj;
        cr.mm_dim = cc.dim;
        cr.mm_conj_dim = cc.conj_dim;
      }
    }
    rep.total += cr.count;
    rep.total_mod_conj += cr.count_mod_conj;
    rep.classes.push_back(std::move(cr));
  }
  return rep;
}

std::string report_json(const ComponentReport& r) {
  std::ostringstream os;
  os << "{\"phi\":\"" << r.phi << "\",\"torsion\":[";
  if (r.torsion.empty()) os << "1";
  for (size_t i = 0; i < r.torsion.size(); ++i) os << (i ? "," : "") << r.torsion[i].get_str();
  os << "],\"group\":\"" << r.group << "\",\"realized\":" << (r.realized ? "true" : "false")
     << ",\"classes\":[";
  for (size_t c = 0; c < r.classes.size(); ++c) {
    auto& cl = r.classes[c];
    os << (c ? "," : "") << "{\"key\":\"" << cl.key << "\",\"branch\":\"" << cl.branch
       << "\",\"stab_order\":" << cl.stab_order.get_str() << ",\"gbar_order\":" << cl.gbar_order
       << ",\"forms\":[";
    for (size_t i = 0; i < cl.forms.size(); ++i)
      os << (i ? "," : "") << "[" << cl.forms[i].a.get_str() << "," << cl.forms[i].b.get_str()
         << "," << cl.forms[i].c.get_str() << "]";
    os << "],\"rc\":[";
    for (size_t i = 0; i < cl.rc.size(); ++i)
      os << (i ? "," : "") << "[" << cl.rc[i].first << "," << cl.rc[i].second << "]";
    os << "],\"narrow\":[";
    for (size_t i = 0; i < cl.narrowness.size(); ++i)
      os << (i ? "," : "") << "\"" << cl.narrowness[i] << "\"";
    os << "],\"count\":" << cl.count.get_str()
       << ",\"conj_count\":" << cl.count_mod_conj.get_str() << "}";
  }
  os << "],\"total\":" << r.total.get_str()
     << ",\"total_mod_conj\":" << r.total_mod_conj.get_str() << "}";
  return os.str();
}

std::string report_text(const ComponentReport& r) {
  std::ostringstream os;
  os << "phi = " << r.phi << ", A = [";
  if (r.torsion.empty()) os << "1";
  for (size_t i = 0; i < r.torsion.size(); ++i) os << (i ? "," : "") << r.torsion[i].get_str();
  os << "], G = " << r.group << "\n";
  if (!r.realized) {
    os << "type not realized at lattice level\n";
    return os.str();
  }
  for (auto& cl : r.classes) {
    os << "class " << (&cl - r.classes.data() + 1) << " (" << cl.branch
       << ", |Stab| = " << cl.stab_order.get_str() << "):";
    if (cl.branch == "definite") {
      for (size_t i = 0; i < cl.forms.size(); ++i)
        os << " [" << cl.forms[i].a.get_str() << "," << cl.forms[i].b.get_str() << ","
           << cl.forms[i].c.get_str() << "]->[" << cl.rc[i].first << "," << cl.rc[i].second << "]";
    }
    os << " count = " << cl.count.get_str() << " (mod conj " << cl.count_mod_conj.get_str()
       << ")\n";
    if (!cl.narrowness.empty()) {
      os << "  narrowness:";
      for (auto& s : cl.narrowness) os << " {" << s << "}";
      os << "\n";
    }
  }
  os << "total = " << r.total.get_str() << ", mod conjugation = " << r.total_mod_conj.get_str()
     << "\n";
  return os.str();
}

}  // namespace k3
