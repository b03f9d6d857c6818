#include "k3/mm.hpp"

#include <algorithm>
#include <map>

namespace k3 {

int gamma_d_dim(const std::vector<Int>& primes) {
  int d = 1;
  for (auto& p : primes) d += gamma_rank(p);
  return d;
}

F2Vec gamma_d_bits(const GammaDVector& v) {
  int n = gamma_d_dim(v.primes);
  F2Vec out(n, 0);
  int at = 0;
  for (size_t i = 0; i < v.primes.size(); ++i) {
    auto bits = gamma_bits(v.comps[i]);
    for (size_t b = 0; b < bits.size(); ++b) out.set(at + int(b), bits[b]);
    at += int(bits.size());
  }
  out.set(n - 1, v.sign < 0);
  return out;
}

std::vector<GammaDVector> beta_elements(const std::vector<Int>& primes) {
  if (primes.empty()) throw std::invalid_argument("beta_elements: P(d) empty");
  std::vector<GammaDVector> out;
  auto mk = [&](int eps, const Rat& unit, int sign) {
    GammaDVector v;
    v.primes = primes;
    for (auto& p : primes) v.comps.push_back(GammaElement(eps, square_class(p, unit)));
    v.sign = sign;
    return v;
  };
  out.push_back(mk(-1, Rat(1), -1));   // beta(-1, 1, -1)
  out.push_back(mk(1, Rat(-1), -1));   // beta(1, -1, -1)
  for (auto& pj : primes) out.push_back(mk(1, Rat(pj), 1));  // beta(1, p_j, 1)
  return out;
}

ComponentCount component_group(const std::vector<Int>& primes,
                               const std::vector<F2Subspace>& sigma_sharps,
                               const std::vector<GammaDVector>& gammas) {
  ComponentCount cc;
  if (primes.empty()) {
    // Gamma_d is trivial; beta(-1,1,-1) projects to the sign flip
    cc.dim = cc.conj_dim = 0;
    cc.count = cc.count_mod_conj = 1;
    return cc;
  }
  int n = gamma_d_dim(primes);
  F2Subspace K(n);
  int at = 0;
  for (size_t i = 0; i < primes.size(); ++i) {
    for (uint64_t b : sigma_sharps[i].basis) {
      F2Vec v(n, 0);
      v.bits = b << at;
      K.add(v);
    }
    at += gamma_rank(primes[i]);
  }
  for (auto& b : beta_elements(primes)) K.add(gamma_d_bits(b));
  F2Subspace Kprime = K;
  cc.dim_over_kprime = n - Kprime.dim();
  for (auto& g : gammas) K.add(gamma_d_bits(g));
  cc.dim = n - K.dim();
  cc.count = int_pow(Int(2), (unsigned long)cc.dim);
  // conjugation: cokernel of K -> Gamma_d (drop the sign bit)
  F2Subspace proj(n - 1);
  uint64_t mask = (n - 1 == 64) ? ~uint64_t(0) : ((uint64_t(1) << (n - 1)) - 1);
  for (uint64_t b : K.basis) {
    F2Vec v(n - 1, b & mask);
    proj.add(v);
  }
  cc.conj_dim = (n - 1) - proj.dim();
  cc.count_mod_conj = int_pow(Int(2), (unsigned long)cc.conj_dim);
  return cc;
}

IMat iso_inverse(const Fqf& qa, const Fqf& qb, const IMat& A) {
  int la = qa.len(), lb = qb.len();
  IMat big(la + lb, lb);
  for (int i = 0; i < la; ++i)
    for (int j = 0; j < lb; ++j) big(i, j) = A(i, j);
  for (int j = 0; j < lb; ++j) big(la + j, j) = qb.orders[j];
  IMat inv(lb, la);
  for (int j = 0; j < lb; ++j) {
    Elt e(lb, Int(0));
    e[j] = 1;
    std::vector<Int> x;
    if (!solve_left(big, e, x)) throw std::logic_error("iso_inverse: not invertible");
    for (int k = 0; k < la; ++k) inv(j, k) = mod_pos(x[k], qa.orders[k]);
  }
  return inv;
}

IMat p_part_matrix(const Fqf& q, const FqfPart& part, const IMat& A) {
  int k = part.q.len(), l = q.len();
  IMat big(k + l, l);
  for (int r = 0; r < k; ++r)
    for (int j = 0; j < l; ++j) big(r, j) = part.gen_embed(r, j);
  for (int j = 0; j < l; ++j) big(k + j, j) = q.orders[j];
  IMat out(k, k);
  for (int a = 0; a < k; ++a) {
    Elt img = q.reduce(row_times(part.gen_embed.row(a), A));
    std::vector<Int> x;
    if (!solve_left(big, img, x)) throw std::logic_error("p_part_matrix: restriction failed");
    for (int j = 0; j < k; ++j) out(a, j) = mod_pos(x[j], part.q.orders[j]);
  }
  return out;
}

GammaDVector gamma_of(const Fqf& qG, const std::vector<Int>& primes, const IMat& g, long r,
                      const Int& d, const PsiOptions& opts) {
  GammaDVector gv;
  gv.primes = primes;
  gv.sign = 1;
  for (auto& p : primes) {
    auto part = p_part(qG, p);
    IMat gp = p_part_matrix(qG, part, g);
    gv.comps.push_back(psi_p(part.q, gp, r, d, p, opts));
  }
  return gv;
}

namespace {

std::string mat_key(const IMat& m) {
  std::string s;
  for (auto& x : m.a) { s += x.get_str(); s += ','; }
  return s;
}

IMat reduce_cols(const Fqf& q, IMat m) {
  for (int i = 0; i < m.r; ++i)
    for (int j = 0; j < m.c; ++j) m(i, j) = mod_pos(m(i, j), q.orders[j]);
  return m;
}

}  // namespace

OrbitCount definite_orbits(const BinaryForm& T, const Fqf& qG,
                           const std::vector<IMat>& gbar_gens, size_t bound) {
  DiscPresentation DT = fqf_from_gram(T.lattice());
  auto alpha0 = fqf_isomorphism(qG, DT.q);
  if (!alpha0) throw std::logic_error("definite_orbits: q_G not isomorphic to q_T");
  IMat a0 = *alpha0;
  IMat a0inv = iso_inverse(qG, DT.q, a0);
  // full automorphism list of q_T
  auto autos = fqf_automorphism_group(DT.q, bound);
  std::map<std::string, int> index;
  for (size_t i = 0; i < autos.size(); ++i) index[mat_key(autos[i])] = int(i);
  auto idx_of = [&](const IMat& m) {
    auto it = index.find(mat_key(reduce_cols(DT.q, m)));
    if (it == index.end()) throw std::logic_error("definite_orbits: product left the group");
    return it->second;
  };
  // left generators: alpha0^{-1} g alpha0
  std::vector<IMat> left;
  for (auto& g : gbar_gens) left.push_back(reduce_cols(DT.q, a0inv * g * a0));
  // right generators: images of O(T) with their determinants
  std::vector<std::pair<IMat, int>> right;
  for (auto& h : definite_isometry_group(T)) {
    IMat img(DT.q.len(), DT.q.len());
    for (int a = 0; a < DT.q.len(); ++a) {
      std::vector<Rat> row(2, Rat(0));
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) row[j] += DT.gens(a, i) * Rat(h(i, j));
      Elt cls = DT.project(row);
      for (int j = 0; j < DT.q.len(); ++j) img(a, j) = cls[j];
    }
    int dt = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)) < 0 ? -1 : 1;
    right.push_back({reduce_cols(DT.q, img), dt});
  }
  // BFS over (auto index, sign)
  int n = int(autos.size());
  std::vector<int> color(2 * n, -1);
  int orbits = 0;
  long real_orbits = 0;
  for (int s = 0; s < 2 * n; ++s) {
    if (color[s] >= 0) continue;
    int c = orbits++;
    std::vector<int> stack{s};
    color[s] = c;
    std::vector<int> members;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      int gi = cur / 2, sg = cur % 2;
      auto visit = [&](int gj, int s2) {
        int st = gj * 2 + s2;
        if (color[st] < 0) {
          color[st] = c;
          stack.push_back(st);
        }
      };
      for (auto& g : left) visit(idx_of(g * autos[gi]), sg);
      for (auto& [h, dt] : right) visit(idx_of(autos[gi] * h), dt < 0 ? 1 - sg : sg);
    }
    // orbit fixed by conjugation iff it contains both signs of some gamma
    bool fixed = false;
    for (int m : members)
      if (color[(m / 2) * 2 + (1 - m % 2)] == c) { fixed = true; break; }
    if (fixed) ++real_orbits;
  }
  OrbitCount oc;
  oc.real_orbits = real_orbits;
  oc.moved_orbits = orbits - real_orbits;
  return oc;
}

}  // namespace k3
