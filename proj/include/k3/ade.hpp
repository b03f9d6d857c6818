#pragma once
#include "k3/lattice.hpp"

#include <string>
#include <vector>

namespace k3 {

struct AdeComponent {
  char type;  // 'A', 'D', 'E'
  int n;      // rank
  int offset; // index of the first fundamental root in the configuration
};

struct AdeConfiguration {
  std::vector<AdeComponent> comps;
  IntegralLattice L;  // block Gram, roots of norm -2

  int rank() const { return L.rank(); }
  std::string symbol() const;
};

IMat cartan_gram(char type, int n);  // negated Cartan matrix

// "E8+A9+A1", "2A5+4A2", "7A2"
AdeConfiguration root_lattice_from_ade(const std::string& spec);

using Perm = std::vector<int>;  // root index permutation, image of i at [i]

std::vector<Perm> aut_generators(const AdeConfiguration& phi);
Int aut_order(const AdeConfiguration& phi);
bool perm_preserves_gram(const AdeConfiguration& phi, const Perm& g);

// classes in D_L of norm-(-2) vectors of L-dual that are not in L
std::vector<Elt> dual_root_classes(const AdeConfiguration& phi, const DiscPresentation& D);

// affine marks (multiplicities of the non-identity fiber components), indexed
// like the fundamental roots of the component; derived from the highest root
// and checked against the affine-diagram invariants
std::vector<Int> fiber_marks(char type, int n);

}  // namespace k3
