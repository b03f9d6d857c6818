#pragma once
#include "k3/fqf.hpp"
#include "k3/mat.hpp"

#include <vector>

namespace k3 {

// An even Z-lattice given by its Gram matrix (rows are basis vectors;
// pairing x * G * y^T).
struct IntegralLattice {
  IMat gram;
  int rank() const { return gram.r; }
  Int disc() const { return det(gram); }
  void check_even() const;
};

// discriminant group D = L^dual / L with its quadratic form, generator lifts
// and the projection map
struct DiscPresentation {
  Fqf q;
  QMat gens;   // rows: generator vectors of D in L-basis rational coords
  IMat GV;     // projection: class coords of x in L^dual are (x * GV) mod orders
  std::vector<int> kept_cols;  // columns of GV corresponding to orders > 1

  Elt project(const std::vector<Rat>& x) const;  // x in L-basis coords, in L^dual
};

DiscPresentation fqf_from_gram(const IntegralLattice& L);

// LLL reduction for positive definite rational Gram; returns U with
// U * G * U^T reduced, basis rows transform as U * B.
IMat lll_reduce(const QMat& gram);

// All vectors x (up to sign, excluding 0) with x G x^T <= bound, G positive
// definite rational. Returned as integer coordinate rows.
std::vector<std::vector<Int>> short_vectors(const QMat& gram, const Rat& bound);

// Roots of a negative definite even lattice: all v with <v,v> = -2 (both signs).
std::vector<std::vector<Int>> roots_enumerate(const IntegralLattice& L);
size_t root_count(const IntegralLattice& L);

// Gram of the overlattice pr^{-1}(K) for isotropic K given by generators (in
// the coords of disc presentation D). Returns the new lattice plus the basis
// matrix B (rows, rational, in L-basis coords).
struct Overlattice {
  IntegralLattice M;
  QMat basis;  // rows: basis of M in L-basis rational coords
};
Overlattice overlattice_gram(const IntegralLattice& L, const DiscPresentation& D,
                             const std::vector<Elt>& Kgens);

// ---- genus ----
struct GenusSymbol {
  int s_plus = 0, s_minus = 0;
  Fqf q;
};

// the genus that the transcendental lattices of an overlattice M live in:
// signature (2, 18 - rank M) with the negated discriminant form
GenusSymbol genus_of(const IntegralLattice& M);

// existence criterion (Nikulin); condition (iii) delegated to the p-adic module
bool genus_nonempty(const GenusSymbol& g);

// ---- rank-2 positive definite toolkit ----
struct BinaryForm {
  Int a, b, c;  // Gram [[a,b],[b,c]]
  Int det() const { return a * c - b * b; }
  bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const BinaryForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
  IntegralLattice lattice() const {
    return IntegralLattice{IMat{{a, b}, {b, c}}};
  }
};

// Gauss-reduced representative: 0 <= 2b <= a <= c
BinaryForm gauss_reduce(const BinaryForm& f);

// all reduced even positive definite forms of the given determinant
std::vector<BinaryForm> reduced_even_forms(const Int& det);

// genus representatives: reduced even forms with discriminant form
// isomorphic to q (one per isometry class, sorted)
std::vector<BinaryForm> definite_genus_representatives(const Int& det, const Fqf& q);

// the finite orthogonal group O(T) of a positive definite binary form,
// as 2x2 integer matrices (full element list)
std::vector<IMat> definite_isometry_group(const BinaryForm& f);

}  // namespace k3
