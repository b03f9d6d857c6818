#include <doctest.h>

#include "k3/ade.hpp"
#include "k3/lattice.hpp"
#include "k3/padic.hpp"

#include <algorithm>
#include <set>

using namespace k3;

namespace {

// brute-force GL2(Z) equivalence: search unimodular transforms with entries <= 5
bool gl2_equivalent_bruteforce(const BinaryForm& f, const BinaryForm& g) {
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long c = -5; c <= 5; ++c)
        for (long d = -5; d <= 5; ++d) {
          if (a * d - b * c != 1 && a * d - b * c != -1) continue;
          // new gram = U G U^T with rows (a,b),(c,d)
          Int na = f.a * a * a + 2 * f.b * a * b + f.c * b * b;
          Int nb = f.a * a * c + f.b * (a * d + b * c) + f.c * b * d;
          Int nc = f.a * c * c + 2 * f.b * c * d + f.c * d * d;
          if (na == g.a && nb == g.b && nc == g.c) return true;
        }
  return false;
}

size_t brute_graph_auto_count(const AdeConfiguration& phi) {
  // count permutations preserving the Gram (only feasible for small rank)
  int n = phi.rank();
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  size_t count = 0;
  do {
    if (perm_preserves_gram(phi, p)) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("ADE parsing and grams") {
  auto a1 = root_lattice_from_ade("A1");
  CHECK(a1.L.gram == IMat{{-2}});
  auto a2 = root_lattice_from_ade("A2");
  CHECK(a2.L.gram == IMat{{-2, 1}, {1, -2}});
  auto big = root_lattice_from_ade("E8+A9+A1");
  CHECK(big.rank() == 18);
  CHECK(abs(big.L.disc()) == 20);
  CHECK(big.symbol() == "E8+A9+A1");
  CHECK(root_lattice_from_ade("A5+2A2+A5").symbol() == "2A5+2A2");
  CHECK(root_lattice_from_ade("7A2").rank() == 14);
  CHECK_THROWS_AS(root_lattice_from_ade("B3"), parse_error);
  CHECK_THROWS_AS(root_lattice_from_ade("D3"), parse_error);
}

TEST_CASE("aut generators and order") {
  auto d4 = root_lattice_from_ade("D4");
  CHECK(aut_order(d4) == 6);
  CHECK(brute_graph_auto_count(d4) == 6);  // triality, brute force
  auto e8 = root_lattice_from_ade("E8");
  CHECK(aut_order(e8) == 1);
  auto seven = root_lattice_from_ade("7A2");
  CHECK(aut_order(seven) == Int(128) * 5040);  // (Z/2)^7 x| S7
  for (auto& g : aut_generators(seven)) CHECK(perm_preserves_gram(seven, g));
  auto e6 = root_lattice_from_ade("E6");
  CHECK(aut_order(e6) == 2);
  CHECK(brute_graph_auto_count(e6) == 2);
}

TEST_CASE("roots enumeration") {
  CHECK(root_count(root_lattice_from_ade("A1").L) == 2);
  CHECK(root_count(root_lattice_from_ade("A2").L) == 6);
  CHECK(root_count(root_lattice_from_ade("A3").L) == 12);
  CHECK(root_count(root_lattice_from_ade("D4").L) == 24);
  CHECK(root_count(root_lattice_from_ade("E8").L) == 240);
  for (auto& r : roots_enumerate(root_lattice_from_ade("A2").L)) {
    IntegralLattice A2 = root_lattice_from_ade("A2").L;
    Int n = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) n += r[i] * A2.gram(i, j) * r[j];
    CHECK(n == -2);
  }
}

TEST_CASE("overlattice gram") {
  auto cfg = root_lattice_from_ade("7A2");
  auto D = fqf_from_gram(cfg.L);
  // K = 0: unchanged
  auto M0 = overlattice_gram(cfg.L, D, {});
  CHECK(M0.M.gram == cfg.L.gram);
  // |D_M| = |D_L| / |K|^2
  Elt v(7, Int(1));
  v[0] = 0;
  auto M = overlattice_gram(cfg.L, D, {v});
  auto DM = fqf_from_gram(M.M);
  CHECK(DM.q.group_order() * 9 == D.q.group_order());
  // roots grow or stay: here the glue adds no roots
  CHECK(root_count(M.M) == root_count(cfg.L));
  // a non-isotropic K is rejected
  Elt w(7, Int(0));
  w[0] = 1;
  CHECK(fqf_from_gram(cfg.L).q.q_value(w) != 0);
  CHECK_THROWS(overlattice_gram(cfg.L, D, {w}));
}

TEST_CASE("overlattice/isotropic bijection for small discriminants") {
  for (auto* s : {"3A2", "A3+A1", "D4", "2A1+A2"}) {
    auto cfg = root_lattice_from_ade(s);
    auto D = fqf_from_gram(cfg.L);
    auto subs = isotropic_subgroups(D.q);
    std::set<std::string> grams;
    for (auto& K : subs) {
      auto M = overlattice_gram(cfg.L, D, K.gens);
      grams.insert(M.M.gram.str() + "|" + std::to_string(K.elements.size()));
    }
    // distinct K give distinct (gram, index) data here; the bijection K <-> M
    // is checked by the count
    CHECK(grams.size() == subs.size());
  }
}

TEST_CASE("gauss reduction") {
  auto r1 = gauss_reduce(BinaryForm{2, 0, 10});
  CHECK(r1 == BinaryForm{2, 0, 10});
  auto r2 = gauss_reduce(BinaryForm{2, 2, 10});
  CHECK(r2.det() == BinaryForm{2, 2, 10}.det());
  CHECK(gl2_equivalent_bruteforce(BinaryForm{2, 2, 10}, r2));
  CHECK(0 <= 2 * r2.b);
  CHECK(2 * r2.b <= r2.a);
  CHECK(r2.a <= r2.c);
  auto r3 = gauss_reduce(BinaryForm{10, 4, 2});
  CHECK(r3.det() == 4);
  CHECK(gl2_equivalent_bruteforce(BinaryForm{10, 4, 2}, r3));
  CHECK_THROWS(gauss_reduce(BinaryForm{2, 3, 2}));  // indefinite

  // uniqueness per class: reducing random transforms returns the original
  std::vector<BinaryForm> reduced = {{2, 0, 10}, {2, 1, 2}, {4, 2, 6}, {6, 2, 8}};
  long mats[][4] = {{1, 0, 3, 1}, {2, 1, 1, 1}, {0, 1, -1, 0}, {3, 2, 1, 1}, {1, 4, 0, 1}};
  for (auto& f : reduced)
    for (auto& m : mats) {
      Int a = m[0], b = m[1], c = m[2], d = m[3];
      BinaryForm t{f.a * a * a + 2 * f.b * a * b + f.c * b * b,
                   f.a * a * c + f.b * (a * d + b * c) + f.c * b * d,
                   f.a * c * c + 2 * f.b * c * d + f.c * d * d};
      CHECK(gauss_reduce(t) == f);
    }
}

TEST_CASE("definite genus representatives") {
  // Table I no.1: det 20 with the right q gives only [2,0,10]
  auto cfg = root_lattice_from_ade("E8+A9+A1");
  auto qG = negate(fqf_from_gram(cfg.L).q);
  auto reps = definite_genus_representatives(Int(20), qG);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0] == BinaryForm{2, 0, 10});
  // det 20 has another even class [4,2,6] in a different genus
  auto all20 = reduced_even_forms(Int(20));
  CHECK(all20.size() == 2);
  // determinant 3 with q of negated A2: {[2,1,2]}
  auto qa2 = negate(fqf_from_gram(root_lattice_from_ade("A2").L).q);
  auto reps3 = definite_genus_representatives(Int(3), qa2);
  REQUIRE(reps3.size() == 1);
  CHECK(reps3[0] == BinaryForm{2, 1, 2});
}

TEST_CASE("definite isometry groups") {
  CHECK(definite_isometry_group(BinaryForm{2, 0, 10}).size() == 4);
  CHECK(definite_isometry_group(BinaryForm{2, 1, 2}).size() == 12);  // hexagonal
  CHECK(definite_isometry_group(BinaryForm{6, 2, 8}).size() == 2);   // only +-I
  // closure and gram preservation
  auto g = definite_isometry_group(BinaryForm{2, 0, 10});
  IMat gram{{2, 0}, {0, 10}};
  for (auto& m : g) {
    IMat t = m * gram * m.transpose();
    CHECK(t == gram);
  }
}

TEST_CASE("genus nonempty criterion") {
  // Table I no.1 genus is nonempty
  auto cfg = root_lattice_from_ade("E8+A9+A1");
  GenusSymbol g1{2, 0, negate(fqf_from_gram(cfg.L).q)};
  CHECK(genus_nonempty(g1));
  // (0,1) with trivial form: Br 0 != -1
  GenusSymbol g2{0, 1, fqf_trivial()};
  CHECK_FALSE(genus_nonempty(g2));
  // (2,18) with trivial form: witnessed by the even unimodular lattice
  GenusSymbol g3{2, 18, fqf_trivial()};
  CHECK(genus_nonempty(g3));
  // (2,2) with q of negated E8+A9+A1 would need rank >= leng... sanity on A1
  GenusSymbol g4{2, 17, negate(fqf_from_gram(root_lattice_from_ade("A1").L).q)};
  CHECK(genus_nonempty(g4));
}

TEST_CASE("dual root classes") {
  // A2: extra-root classes are empty (nonzero classes have norms -2/3 mod 2Z)
  auto a2 = root_lattice_from_ade("A2");
  auto D2 = fqf_from_gram(a2.L);
  CHECK(dual_root_classes(a2, D2).empty());
  // A1+A1: e1/2 + e2/2 has norm -1... still not -2; 4A1 gives classes of
  // norm -2 with support 4
  auto a14 = root_lattice_from_ade("4A1");
  auto D4 = fqf_from_gram(a14.L);
  auto cls = dual_root_classes(a14, D4);
  CHECK(cls.size() == 1);  // (1,1,1,1)
  // 7A2: support-3 sign patterns
  auto seven = root_lattice_from_ade("7A2");
  auto D7 = fqf_from_gram(seven.L);
  auto cls7 = dual_root_classes(seven, D7);
  CHECK(cls7.size() == 35 * 8);  // C(7,3) supports x 2^3 signs
}

