#include "k3/lattice.hpp"
#include "k3/padic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace k3 {

void IntegralLattice::check_even() const {
  if (gram.r != gram.c) throw std::invalid_argument("lattice: gram not square");
  for (int i = 0; i < gram.r; ++i) {
    if (mod_pos(gram(i, i), 2) != 0) throw std::invalid_argument("lattice: odd diagonal");
    for (int j = 0; j < gram.c; ++j)
      if (gram(i, j) != gram(j, i)) throw std::invalid_argument("lattice: gram not symmetric");
  }
  if (det(gram) == 0) throw std::invalid_argument("lattice: degenerate gram");
}

Elt DiscPresentation::project(const std::vector<Rat>& x) const {
  // z = x * GV must be integral for x in L^dual
  std::vector<Rat> z(GV.c, Rat(0));
  for (int i = 0; i < GV.r; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < GV.c; ++j) z[j] += x[i] * Rat(GV(i, j));
  }
  Elt out;
  for (size_t k = 0; k < kept_cols.size(); ++k) {
    const Rat& v = z[kept_cols[k]];
    if (v.get_den() != 1) throw std::logic_error("DiscPresentation::project: vector not in dual");
    out.push_back(mod_pos(Int(v.get_num()), q.orders[k]));
  }
  return out;
}

DiscPresentation fqf_from_gram(const IntegralLattice& L) {
  L.check_even();
  int n = L.rank();
  IMat U, V;
  IMat D = snf(L.gram, U, V);
  DiscPresentation P;
  P.GV = L.gram * V;
  QMat Ginv = inverse(to_rational(L.gram));
  std::vector<int> kept;
  std::vector<Int> orders;
  for (int i = 0; i < n; ++i)
    if (D(i, i) > 1) {
      kept.push_back(i);
      orders.push_back(D(i, i));
    }
  P.kept_cols = kept;
  P.q.orders = orders;
  int l = int(kept.size());
  P.gens = QMat(l, n);
  for (int a = 0; a < l; ++a) {
    // generator a = row kept[a] of U divided by d
    for (int j = 0; j < n; ++j) P.gens(a, j) = Rat(U(kept[a], j)) / Rat(D(kept[a], kept[a]));
  }
  P.q.F = QMat(l, l);
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b) {
      Rat v(0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (P.gens(a, i) != 0 && P.gens(b, j) != 0)
            v += P.gens(a, i) * Rat(L.gram(i, j)) * P.gens(b, j);
      P.q.F(a, b) = v;
    }
  P.q.normalize_entries();
  return P;
}

// ---------- LLL ----------

IMat lll_reduce(const QMat& gram) {
  int n = gram.r;
  IMat U = IMat::identity(n);
  if (n <= 1) return U;
  QMat g = gram;
  auto inner = [&](int i, int j) { return g(i, j); };
  // maintain Gram of the current basis directly; mu and B from Gram-Schmidt
  auto recompute = [&](std::vector<std::vector<Rat>>& mu, std::vector<Rat>& B) {
    mu.assign(n, std::vector<Rat>(n, Rat(0)));
    B.assign(n, Rat(0));
    // Gram-Schmidt on the form: B[i] = |b_i*|^2, mu[i][j]
    QMat gs = g;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        Rat m(0);
        // mu[i][j] = <b_i, b_j*> / B[j]
        Rat ip = inner(i, j);
        for (int k = 0; k < j; ++k) ip -= mu[j][k] * mu[i][k] * B[k];
        m = ip / B[j];
        mu[i][j] = m;
      }
      Rat bi = inner(i, i);
      for (int k = 0; k < i; ++k) bi -= mu[i][k] * mu[i][k] * B[k];
      B[i] = bi;
    }
    (void)gs;
  };
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> B;
  auto apply_add = [&](int i, int j, const Int& q_) {
    if (q_ == 0) return;
    U.add_row(i, j, -q_);
    // g update: row/col i changes: b_i -= q b_j
    for (int k = 0; k < n; ++k) g(i, k) -= Rat(q_) * g(j, k);
    for (int k = 0; k < n; ++k) g(k, i) -= Rat(q_) * g(k, j);
  };
  recompute(mu, B);
  int k = 1;
  int guard = 0;
  while (k < n && ++guard < 100000) {
    // size reduce
    for (int j = k - 1; j >= 0; --j) {
      Rat m = mu[k][j];
      Int q_;
      // round to nearest
      mpz_fdiv_q(q_.get_mpz_t(), Int(m.get_num() * 2 + m.get_den()).get_mpz_t(),
                 Int(m.get_den() * 2).get_mpz_t());
      apply_add(k, j, q_);
      recompute(mu, B);
    }
    // Lovasz
    Rat lhs = B[k];
    Rat rhs = (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      U.swap_rows(k, k - 1);
      g.swap_rows(k, k - 1);
      auto gt = g.transpose();
      gt.swap_rows(k, k - 1);
      g = gt.transpose();
      recompute(mu, B);
      k = std::max(1, k - 1);
    }
  }
  return U;
}

// ---------- short vectors (Fincke-Pohst on exact LDL^T) ----------

std::vector<std::vector<Int>> short_vectors(const QMat& gram, const Rat& bound) {
  int n = gram.r;
  std::vector<std::vector<Int>> out;
  if (n == 0) return out;
  // LLL preprocess
  IMat U = lll_reduce(gram);
  QMat g = to_rational(U) * gram * to_rational(U.transpose());
  // LDL^T: g = L D L^T with L unit lower triangular
  QMat Lm = QMat::identity(n);
  std::vector<Rat> Dv(n);
  {
    QMat a = g;
    for (int j = 0; j < n; ++j) {
      Rat d = a(j, j);
      for (int k = 0; k < j; ++k) d -= Lm(j, k) * Lm(j, k) * Dv[k];
      Dv[j] = d;
      if (d <= 0) throw std::invalid_argument("short_vectors: form not positive definite");
      for (int i = j + 1; i < n; ++i) {
        Rat v = a(i, j);
        for (int k = 0; k < j; ++k) v -= Lm(i, k) * Lm(j, k) * Dv[k];
        Lm(i, j) = v / d;
      }
    }
  }
  // enumerate x (integer rows in the reduced basis) with x g x^T <= bound:
  // Q(x) = sum_j Dv[j] * (x_j + sum_{i>j} x_i L(i,j))^2
  std::vector<Int> x(n, Int(0));
  std::vector<Rat> center(n, Rat(0));  // c_j given x_{j+1..}
  std::vector<Rat> partial(n + 1, Rat(0));
  std::function<void(int)> rec = [&](int j) {
    if (j < 0) {
      bool all0 = true;
      for (auto& v : x)
        if (v != 0) { all0 = false; break; }
      if (!all0) out.push_back(x);
      return;
    }
    // c_j = sum_{i > j} x_i * L(i, j)
    Rat c(0);
    for (int i = j + 1; i < n; ++i)
      if (x[i] != 0) c += Rat(x[i]) * Lm(i, j);
    Rat rem = bound - partial[j + 1];
    // Dv[j] * (x_j + c)^2 <= rem
    Rat lim2 = rem / Dv[j];
    // |x_j + c| <= sqrt(lim2): loop x_j from ceil(-c - s) .. floor(-c + s)
    // compute integer bounds by testing
    Int lo, hi;
    {
      // exact bounds: max/min t with Dv[j]*(t + c)^2 <= rem, seeded from a
      // double estimate and fixed by exact comparisons
      double cd = c.get_d(), limd = lim2.get_d();
      double s = limd > 0 ? std::sqrt(limd) : 0;
      long hi0 = long(std::floor(-cd + s)), lo0 = long(std::ceil(-cd - s));
      auto ok = [&](long t) {
        Rat u = Rat(t) + c;
        return Dv[j] * u * u <= rem;
      };
      while (ok(hi0 + 1)) ++hi0;
      while (hi0 >= lo0 && !ok(hi0)) --hi0;
      while (ok(lo0 - 1)) --lo0;
      while (lo0 <= hi0 && !ok(lo0)) ++lo0;
      lo = lo0; hi = hi0;
    }
    for (Int t = lo; t <= hi; ++t) {
      x[j] = t;
      Rat u = Rat(t) + c;
      partial[j] = partial[j + 1] + Dv[j] * u * u;
      // canonical half: highest nonzero coordinate positive
      rec(j - 1);
    }
    x[j] = 0;
  };
  rec(n - 1);
  // map back to original coordinates, dedupe +-
  std::vector<std::vector<Int>> res;
  std::map<std::string, bool> seen;
  for (auto& v : out) {
    std::vector<Int> w(n, Int(0));
    for (int i = 0; i < n; ++i)
      if (v[i] != 0)
        for (int j = 0; j < n; ++j) w[j] += v[i] * U(i, j);
    // canonical sign: first nonzero positive
    int s = 0;
    for (int j = 0; j < n; ++j)
      if (w[j] != 0) { s = sgn(w[j]) > 0 ? 1 : -1; break; }
    if (s < 0)
      for (auto& z : w) z = -z;
    std::string key;
    for (auto& z : w) { key += z.get_str(); key += ','; }
    if (seen.emplace(key, true).second) res.push_back(w);
  }
  return res;
}

std::vector<std::vector<Int>> roots_enumerate(const IntegralLattice& L) {
  // negative definite expected
  QMat g = to_rational(-L.gram);
  if (det(g) == 0) throw std::invalid_argument("roots_enumerate: degenerate");
  auto half = short_vectors(g, Rat(2));
  std::vector<std::vector<Int>> out;
  for (auto& v : half) {
    Rat n(0);
    for (int i = 0; i < L.rank(); ++i)
      for (int j = 0; j < L.rank(); ++j)
        if (v[i] != 0 && v[j] != 0) n += Rat(v[i] * v[j]) * Rat(L.gram(i, j));
    if (n == Rat(-2)) {
      out.push_back(v);
      std::vector<Int> neg;
      for (auto& z : v) neg.push_back(-z);
      out.push_back(neg);
    }
  }
  return out;
}

size_t root_count(const IntegralLattice& L) { return roots_enumerate(L).size(); }

// ---------- overlattice ----------

Overlattice overlattice_gram(const IntegralLattice& L, const DiscPresentation& D,
                             const std::vector<Elt>& Kgens) {
  int n = L.rank();
  // lifts of K generators as rational rows
  std::vector<std::vector<Rat>> lifts;
  for (auto& k : Kgens) {
    if (D.q.q_value(k) != 0) throw std::invalid_argument("overlattice_gram: K not isotropic");
    std::vector<Rat> v(n, Rat(0));
    for (int a = 0; a < D.q.len(); ++a)
      if (k[a] != 0)
        for (int j = 0; j < n; ++j) v[j] += Rat(k[a]) * D.gens(a, j);
    lifts.push_back(v);
  }
  // common denominator
  Int den = 1;
  for (auto& v : lifts)
    for (auto& x : v) den = lcm(den, Int(x.get_den()));
  IMat stack(int(lifts.size()) + n, n);
  for (size_t i = 0; i < lifts.size(); ++i)
    for (int j = 0; j < n; ++j) stack(int(i), j) = Int(lifts[i][j] * Rat(den));
  for (int j = 0; j < n; ++j) stack(int(lifts.size()) + j, j) = den;  // den * e_j
  IMat h = hnf(stack);
  Overlattice M;
  M.basis = QMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M.basis(i, j) = Rat(h(i, j)) / Rat(den);
  QMat gm = M.basis * to_rational(L.gram) * M.basis.transpose();
  M.M.gram = IMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (gm(i, j).get_den() != 1)
        throw std::invalid_argument("overlattice_gram: non-integral overlattice (K not isotropic?)");
      M.M.gram(i, j) = Int(gm(i, j).get_num());
    }
  M.M.check_even();
  return M;
}

// ---------- genus ----------

GenusSymbol genus_of(const IntegralLattice& M) {
  if (M.rank() > 18) throw std::invalid_argument("genus_of: rank > 18");
  return GenusSymbol{2, 18 - M.rank(), negate(fqf_from_gram(M).q)};
}

bool genus_nonempty(const GenusSymbol& g) {
  Int r = g.s_plus + g.s_minus;
  Int leng = 0;
  // leng(D) = max over p of leng(D_p)
  for (auto& p : fqf_primes(g.q)) {
    auto part = p_part(g.q, p);
    leng = std::max(leng, Int(part.q.len()));
  }
  if (r < leng) return false;
  int br = brown_invariant(g.q);
  long sig = ((g.s_plus - g.s_minus) % 8 + 8) % 8;
  if (br != int(sig)) return false;
  Int order = g.q.group_order();
  Int d = (g.s_minus % 2 == 0) ? order : -order;
  for (auto& p : fqf_primes(g.q)) {
    auto part = p_part(g.q, p);
    if (!zp_exists_with(to_long(r), d, part.q, p).first) return false;
  }
  return true;
}

// ---------- binary forms ----------

BinaryForm gauss_reduce(const BinaryForm& f0) {
  BinaryForm f = f0;
  if (f.det() <= 0 || f.a <= 0) throw std::invalid_argument("gauss_reduce: not positive definite");
  while (true) {
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
    }
    // translate: b -> b mod a into (-a/2, a/2]
    Int b2 = mod_pos(f.b, f.a);
    if (2 * b2 > f.a) b2 -= f.a;
    if (b2 != f.b) {
      // c' = c - (b - b2)/a * (b + b2)  since c' = c + t^2 a + 2 t b with t = (b2-b)/a
      Int t = (b2 - f.b) / f.a;
      f.c = f.c + t * t * f.a + 2 * t * f.b;
      f.b = b2;
      continue;
    }
    if (f.a > f.c) continue;
    if (f.b < 0) {
      if (2 * (-f.b) == f.a || f.a == f.c) {
        f.b = -f.b;  // boundary: choose b >= 0
        continue;
      }
      f.b = -f.b;  // proper equivalence classes vs GL2: reduced form takes b >= 0
    }
    break;
  }
  if (!(0 <= 2 * f.b && 2 * f.b <= f.a && f.a <= f.c))
    throw std::logic_error("gauss_reduce: reduction failed");
  return f;
}

std::vector<BinaryForm> reduced_even_forms(const Int& n) {
  std::vector<BinaryForm> out;
  for (Int a = 2; a * a <= 4 * n / 3; a += 2)
    for (Int b = 0; 2 * b <= a; ++b) {
      Int num = n + b * b;
      if (num % a != 0) continue;
      Int c = num / a;
      if (c < a) continue;
      if (mod_pos(c, 2) != 0) continue;
      out.push_back(BinaryForm{a, b, c});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BinaryForm> definite_genus_representatives(const Int& det, const Fqf& q) {
  std::vector<BinaryForm> out;
  for (auto& f : reduced_even_forms(det)) {
    auto D = fqf_from_gram(f.lattice());
    if (fqf_isomorphic(D.q, q)) out.push_back(f);
  }
  return out;
}

std::vector<IMat> definite_isometry_group(const BinaryForm& f) {
  IntegralLattice T = f.lattice();
  QMat g = to_rational(T.gram);
  auto va = short_vectors(g, Rat(f.a));
  auto vc = short_vectors(g, Rat(f.c));
  auto norm_of = [&](const std::vector<Int>& v) {
    Rat n(0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) n += Rat(v[i] * v[j]) * Rat(T.gram(i, j));
    return n;
  };
  std::vector<std::vector<Int>> imgs_a, imgs_c;
  for (auto& v : va)
    if (norm_of(v) == Rat(f.a)) {
      imgs_a.push_back(v);
      imgs_a.push_back({-v[0], -v[1]});
    }
  for (auto& v : vc)
    if (norm_of(v) == Rat(f.c)) {
      imgs_c.push_back(v);
      imgs_c.push_back({-v[0], -v[1]});
    }
  std::vector<IMat> out;
  for (auto& x : imgs_a)
    for (auto& y : imgs_c) {
      // pairing must match b
      Rat ip(0);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ip += Rat(x[i] * y[j]) * Rat(T.gram(i, j));
      if (ip != Rat(f.b)) continue;
      IMat m(2, 2);
      m(0, 0) = x[0]; m(0, 1) = x[1];
      m(1, 0) = y[0]; m(1, 1) = y[1];
      Int dt = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
      if (dt != 1 && dt != -1) continue;
      out.push_back(m);
    }
  return out;
}

}  // namespace k3
