#pragma once
#include "k3/mat.hpp"
#include "k3/num.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace k3 {

using Elt = std::vector<Int>;  // element of D in generator coords, mod orders

// A finite quadratic form (D, q): generator orders plus the symmetric matrix
// F read mod Delta(Z): diagonal entries are q(eps_i) mod 2Z, off-diagonal
// entries b(eps_i, eps_j) mod Z.
struct Fqf {
  std::vector<Int> orders;  // each > 1, prime powers or general (normalized on demand)
  QMat F;

  Fqf() : F(0, 0) {}
  Fqf(std::vector<Int> ords, QMat f) : orders(std::move(ords)), F(std::move(f)) {}

  int len() const { return int(orders.size()); }
  Int group_order() const {
    Int n = 1;
    for (auto& d : orders) n *= d;
    return n;
  }
  bool trivial() const { return orders.empty(); }

  Rat q_value(const Elt& x) const;                  // in [0, 2)
  Rat b_value(const Elt& x, const Elt& y) const;    // in [0, 1)
  Int elt_order(const Elt& x) const;
  Elt reduce(const Elt& x) const;

  void normalize_entries();  // put diag in [0,2), offdiag in [0,1)
  void check_valid() const;  // well-definedness + nondegeneracy
  bool is_nondegenerate() const;
};

Fqf fqf_trivial();
Fqf direct_sum(const Fqf& a, const Fqf& b);
Fqf negate(const Fqf& a);

// primes dividing |D|
std::vector<Int> fqf_primes(const Fqf& q);

// p-primary part: returns the presentation together with the embedding of its
// generators into D (rows of gen_embed, one per new generator).
struct FqfPart {
  Fqf q;
  IMat gen_embed;
};
FqfPart p_part(const Fqf& q, const Int& p);

// ---- Table 2 blocks ----
struct NfTag {
  char kind;  // 'w', 'u', 'v'  (u/v only for p = 2)
  int nu;     // >= 1: D-part is (Z/p^nu)^{rank}
  int eps;    // w blocks: p odd: +1 / -1; p = 2: odd label mod 2^min(nu+1,3)
  int rank() const { return kind == 'w' ? 1 : 2; }
  bool operator==(const NfTag& o) const = default;
  bool operator<(const NfTag& o) const {
    if (nu != o.nu) return nu < o.nu;
    if (kind != o.kind) return kind < o.kind;
    return eps < o.eps;
  }
  std::string str(const Int& p) const;
};

// Exact form matrix of one block (F side, i.e. the q-presentation).
Fqf tag_form(const Int& p, const NfTag& t);
Fqf tags_form(const Int& p, const std::vector<NfTag>& tags);

// Constructive splitting of a p-primary form into Table 2 blocks.
// H is the generator change: new generators eps'_i = sum_j H(i,j) eps_j, and
// H * F * tH == Fblocks mod Delta(Z). new orders are aligned with the blocks.
struct BlockSplit {
  std::vector<NfTag> tags;
  IMat H;
  std::vector<Int> orders;
  QMat Fblocks;
};
BlockSplit block_split(const Fqf& qp, const Int& p);

// canonical tag list under the verified rewrite relations
std::vector<NfTag> normal_form_tags(const Fqf& qp, const Int& p);

int brown_invariant(const Fqf& q);                 // element of Z/8
int brown_of_tags(const Int& p, const std::vector<NfTag>& tags);

bool fqf_isomorphic(const Fqf& a, const Fqf& b);

// Explicit isomorphism a -> b as a matrix A with gen_i(a) mapsto sum_j A(i,j) gen_j(b);
// requires equal orders sequences (use on p-parts in matching order).
std::optional<IMat> fqf_isomorphism(const Fqf& a, const Fqf& b, size_t visit_bound = 2000000);

// ---- automorphisms ----
// Full element list of O(D, q) as matrices (row convention); throws
// capacity_error past the bound. The list is closed under the group operation.
std::vector<IMat> fqf_automorphism_group(const Fqf& q, size_t visit_bound = 100000);

// verify t is an automorphism matrix of q (invariants of FqfAutomorphism)
bool fqf_is_automorphism(const Fqf& q, const IMat& t);
// inverse matrix mod N_D
IMat fqf_aut_inverse(const Fqf& q, const IMat& t);

// ---- elements, subgroups, subquotients ----

void for_each_element(const std::vector<Int>& orders,
                      const std::function<void(const Elt&)>& fn);
std::vector<Elt> all_elements(const Fqf& q, size_t bound = 100000);

struct Subgroup {
  std::vector<Elt> gens;
  std::vector<Elt> elements;  // all elements, sorted (canonical key)
  std::vector<Int> invariants;  // SNF invariant factors > 1
};

Subgroup subgroup_from_gens(const Fqf& q, const std::vector<Elt>& gens);

// all totally isotropic subgroups (q == 0 on K), deterministic order
std::vector<Subgroup> isotropic_subgroups(const Fqf& q, size_t bound = 100000);

// isotropic subgroups with prescribed invariant factors (e.g. {2} or {3,3})
std::vector<Subgroup> isotropic_subgroups_of_type(const Fqf& q, const std::vector<Int>& type,
                                                  size_t bound = 1000000);

// generators of the orthogonal complement K-perp of span(gens) w.r.t. b
std::vector<Elt> orthogonal_subgroup(const Fqf& q, const std::vector<Elt>& gens);

// Presentation of S/T for T <= S <= D (both given by generators); carries the
// data needed to express ambient elements in the quotient.
struct SubQuotient {
  Fqf q;
  IMat gen_lifts;  // rows: lifts of the quotient generators in ambient coords
  IMat B1;         // HNF basis of <S, relations>
  IMat Vsnf;       // V of SNF(X)
  std::vector<Int> all_orders;  // with 1's, aligned to columns of Vsnf
  std::vector<int> kept;        // indices with order > 1
};
SubQuotient subquotient(const Fqf& q, const std::vector<Elt>& Sgens,
                        const std::vector<Elt>& Tgens);
Elt sq_express(const SubQuotient& sq, const Elt& ambient);

}  // namespace k3
