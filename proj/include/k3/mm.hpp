#pragma once
#include "k3/f2.hpp"
#include "k3/fqf.hpp"
#include "k3/lattice.hpp"
#include "k3/padic.hpp"
#include "k3/sqclass.hpp"

#include <vector>

namespace k3 {

// element of Gamma_d x Sign
struct GammaDVector {
  std::vector<Int> primes;
  std::vector<GammaElement> comps;
  int sign = 1;
};

int gamma_d_dim(const std::vector<Int>& primes);  // F2 dimension incl. Sign
F2Vec gamma_d_bits(const GammaDVector& v);

// the 2 + |P(d)| projected generators of (Gamma_{A,d} x Sign) cap Gamma_Q~
std::vector<GammaDVector> beta_elements(const std::vector<Int>& primes);

struct ComponentCount {
  long dim = 0;       // log2 of component count
  long conj_dim = 0;  // log2 of count mod complex conjugation
  Int count = 1;
  Int count_mod_conj = 1;
  long dim_over_kprime = 0;  // quotient dim before the gamma generators
};

// K = < Sigma#_p x {1}, (gamma_i, 1), beta's >; returns the quotient data
ComponentCount component_group(const std::vector<Int>& primes,
                               const std::vector<F2Subspace>& sigma_sharps,
                               const std::vector<GammaDVector>& gammas);

// gamma(g): one Psi_p representative per prime of P(d), sign +1. g acts on
// the generators of qG; (r, d) are the rank and discriminant of the genus
// lattices.
GammaDVector gamma_of(const Fqf& qG, const std::vector<Int>& primes, const IMat& g, long r,
                      const Int& d, const PsiOptions& opts = {});

// restriction of an automorphism of q to its p-part (matrix on p_part(q, p) gens)
IMat p_part_matrix(const Fqf& q, const FqfPart& part, const IMat& A);

// definite branch: Orb(T) = Gbar \ (O(q_T) x Sign) / O(T)
struct OrbitCount {
  long real_orbits = 0;   // invariant under the sign flip
  long moved_orbits = 0;  // the rest (always even)
};

OrbitCount definite_orbits(const BinaryForm& T, const Fqf& qG,
                           const std::vector<IMat>& gbar_gens,
                           size_t bound = 2000000);

// inverse of an isomorphism matrix a -> b (rows of A map gens of qa into qb)
IMat iso_inverse(const Fqf& qa, const Fqf& qb, const IMat& A);

}  // namespace k3
