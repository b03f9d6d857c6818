#include "k3/torsion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace k3 {

std::vector<TorsionClass> torsion_classes(const AdeConfiguration& phi,
                                          const DiscPresentation& D, const Subgroup& K) {
  int n = phi.rank();
  // per component: the admissible u_L parts: 0 (met = theta_0) or theta_mu^dual
  // for marks m_mu = 1
  struct Choice {
    int met;
    std::vector<Rat> vec;
  };
  std::vector<std::vector<Choice>> per_comp;
  for (auto& c : phi.comps) {
    std::vector<Choice> cs;
    cs.push_back(Choice{-1, std::vector<Rat>(c.n, Rat(0))});
    auto marks = fiber_marks(c.type, c.n);
    QMat ginv = inverse(to_rational(cartan_gram(c.type, c.n)));
    for (int mu = 0; mu < c.n; ++mu) {
      if (marks[mu] != 1) continue;
      std::vector<Rat> v(c.n);
      for (int j = 0; j < c.n; ++j) v[j] = ginv(mu, j);
      cs.push_back(Choice{mu, v});
    }
    per_comp.push_back(cs);
  }
  std::set<std::string> kset;
  for (auto& e : K.elements) {
    std::string s;
    for (auto& x : e) { s += x.get_str(); s += ','; }
    kset.insert(s);
  }
  std::vector<TorsionClass> out;
  std::vector<Rat> u(n, Rat(0));
  std::vector<int> met(phi.comps.size(), -1);
  std::function<void(size_t)> rec = [&](size_t ci) {
    if (ci == phi.comps.size()) {
      Elt cls = D.project(u);
      std::string s;
      for (auto& x : cls) { s += x.get_str(); s += ','; }
      if (kset.count(s)) out.push_back(TorsionClass{met, cls});
      return;
    }
    auto& c = phi.comps[ci];
    for (auto& ch : per_comp[ci]) {
      for (int j = 0; j < c.n; ++j) u[c.offset + j] = ch.vec[j];
      met[ci] = ch.met;
      rec(ci + 1);
    }
    for (int j = 0; j < c.n; ++j) u[c.offset + j] = 0;
    met[ci] = -1;
  };
  rec(0);
  if (Int(long(out.size())) != Int(long(K.elements.size())))
    throw std::logic_error("torsion_classes: count != |A| (enumeration bug)");
  return out;
}

std::string narrowness_signature(const AdeConfiguration& phi, const TorsionClass& tc) {
  // group by symbol in configuration order
  std::vector<std::pair<std::string, std::pair<int, int>>> runs;  // symbol -> (narrow, total)
  for (size_t i = 0; i < phi.comps.size(); ++i) {
    auto& c = phi.comps[i];
    std::string s = std::string(1, c.type) + std::to_string(c.n);
    if (runs.empty() || runs.back().first != s) runs.push_back({s, {0, 0}});
    runs.back().second.second += 1;
    if (tc.met[i] < 0) runs.back().second.first += 1;
  }
  std::string out;
  for (auto& [s, nt] : runs) {
    if (!out.empty()) out += ";";
    out += s + ":" + std::to_string(nt.first) + "/" + std::to_string(nt.second);
  }
  return out;
}

std::vector<std::string> narrowness_report(const AdeConfiguration& phi,
                                           const DiscPresentation& D, const Subgroup& K) {
  std::vector<std::string> sigs;
  for (auto& tc : torsion_classes(phi, D, K)) {
    if (tc.trivial()) continue;
    sigs.push_back(narrowness_signature(phi, tc));
  }
  std::sort(sigs.begin(), sigs.end());
  return sigs;
}

}  // namespace k3
