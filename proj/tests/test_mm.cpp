#include <doctest.h>

#include "k3/ade.hpp"
#include "k3/mm.hpp"
#include "k3/moduli.hpp"

using namespace k3;

TEST_CASE("beta elements") {
  // beta(-1,1,-1): det -1 at every prime, trivial spin, sign -1
  auto bs = beta_elements({Int(2), Int(3)});
  REQUIRE(bs.size() == 4);
  CHECK(bs[0].sign == -1);
  for (auto& c : bs[0].comps) {
    CHECK(c.det == -1);
    CHECK(c.spin.is_identity());
  }
  // beta(1,-1,-1) at p=2: class of -1 is 7 mod 8
  CHECK(bs[1].comps[0].det == 1);
  CHECK(bs[1].comps[0].spin.unit_mod8 == 7);
  CHECK(bs[1].comps[1].spin.nonresidue);  // -1 is a nonresidue mod 3
  CHECK(bs[1].sign == -1);
  // beta(1,2,1) and beta(1,3,1)
  CHECK(bs[2].comps[0].spin.val_parity);       // ord_2(2) odd
  CHECK_FALSE(bs[2].comps[1].spin.val_parity); // 2 a unit at 3
  CHECK(bs[2].comps[1].spin.nonresidue);       // 2 is NR mod 3
  CHECK(bs[3].comps[1].spin.val_parity);       // ord_3(3) odd
  CHECK(bs[3].sign == 1);
  CHECK_THROWS(beta_elements({}));
}

TEST_CASE("component_group degenerate and invariance") {
  // d = 1: single component
  auto cc = component_group({}, {}, {});
  CHECK(cc.count == 1);
  CHECK(cc.count_mod_conj == 1);

  // reordering generators does not change the count; adding K-elements to a
  // gamma leaves it unchanged
  std::vector<Int> primes = {Int(3)};
  F2Subspace sig(3);
  sig.add(F2Vec(3, 0b001));  // det flip in Sigma#
  GammaDVector g;
  g.primes = primes;
  g.sign = 1;
  g.comps = {GammaElement(1, square_class(Int(3), Rat(3)))};
  auto c1 = component_group(primes, {sig}, {g});
  auto c2 = component_group(primes, {sig}, {g, g});
  CHECK(c1.count == c2.count);
  // perturb gamma by a K element (the Sigma# det flip)
  GammaDVector g2 = g;
  g2.comps[0].det = -g2.comps[0].det;
  auto c3 = component_group(primes, {sig}, {g2});
  CHECK(c1.count == c3.count);
}

TEST_CASE("definite_orbits spot values from Table I") {
  // no.1: E8+A9+A1 trivial torsion, T = [2,0,10] -> [2,0]
  {
    auto cfg = root_lattice_from_ade("E8+A9+A1");
    auto D = fqf_from_gram(cfg.L);
    Fqf qG = negate(D.q);
    // Gbar: image of Aut(Phi) (stabilizer of K = 0 is everything)
    std::vector<IMat> gbar;
    SubQuotient DM = subquotient(D.q, orthogonal_subgroup(D.q, {}), {});
    // identify q_G with the negated subquotient via identity: here DM.q == D.q
    for (auto& g : aut_generators(cfg)) gbar.push_back(gbar_image_of_perm(cfg, D, DM, g));
    auto oc = definite_orbits(BinaryForm{2, 0, 10}, qG, gbar);
    CHECK(oc.real_orbits == 2);
    CHECK(oc.moved_orbits == 0);
  }
  // no.39: A17+A1 -> T = [4,2,10] -> [0,2]
  {
    auto cfg = root_lattice_from_ade("A17+A1");
    auto D = fqf_from_gram(cfg.L);
    Fqf qG = negate(D.q);
    SubQuotient DM = subquotient(D.q, orthogonal_subgroup(D.q, {}), {});
    std::vector<IMat> gbar;
    for (auto& g : aut_generators(cfg)) gbar.push_back(gbar_image_of_perm(cfg, D, DM, g));
    auto oc = definite_orbits(BinaryForm{4, 2, 10}, qG, gbar);
    CHECK(oc.real_orbits == 0);
    CHECK(oc.moved_orbits == 2);
    CHECK(oc.moved_orbits % 2 == 0);
  }
}
