#pragma once
#include "k3/f2.hpp"
#include "k3/fqf.hpp"
#include "k3/lattice.hpp"
#include "k3/sqclass.hpp"

#include <optional>

namespace k3 {

struct IntegralLattice;

// One Jordan block of an even Z_p-lattice. "level" is the exponent of the
// D-part: a w block of level nu is the rank-1 lattice [p^nu * unit] (level 0
// unimodular, p odd only); u/v blocks are 2^level * U and 2^level * V.
struct ZpBlock {
  char kind;   // 'w', 'u', 'v'
  long level;
  Rat unit;    // w blocks: diag = p^level * unit (a p-adic unit)
};

struct ZpJordanForm {
  Int p;
  std::vector<ZpBlock> blocks;
  long rank() const {
    long r = 0;
    for (auto& b : blocks) r += (b.kind == 'w') ? 1 : 2;
    return r;
  }
  Rat disc() const {
    Rat d(1);
    for (auto& b : blocks) {
      if (b.kind == 'w') d *= Rat(int_pow(p, b.level)) * b.unit;
      else if (b.kind == 'u') d *= -Rat(int_pow(p, 2 * b.level));
      else d *= Rat(3) * Rat(int_pow(p, 2 * b.level));
    }
    return d;
  }
};

// Jordan decomposition of L tensor Z_p by exact block pivoting.
ZpJordanForm zp_normal_form(const IntegralLattice& L, const Int& p);

// Does an even Z_p-lattice with rank r, discriminant d (integer, its class
// mod (Z_p^x)^2 is what matters) and discriminant form qp exist? On success
// the witness Jordan form is returned.
std::pair<bool, ZpJordanForm> zp_exists_with(long r, const Int& d, const Fqf& qp, const Int& p);

// Companion lattice Lambda of Step 2: Gram M = F^{-1} for the block normal
// form F of qp, with the [5eps/2] adjustment when needed so that Lambda is an
// orthogonal direct summand of L.
struct CompanionLattice {
  Int p;
  QMat F;     // block normal form matrix (Gram of Lambda-dual)
  QMat M;     // Gram of Lambda = F^{-1}
  int ell() const { return M.r; }
};

CompanionLattice build_lambda(const QMat& Fblocks, long r, const Int& d, const Int& p);

// A p-integral rational matrix with a certified accuracy exponent.
struct ApproxPadicMatrix {
  QMat T;
  long accuracy;  // minord_p(true - T) >= accuracy
};

long minord(const QMat& m, const Int& p);  // +LONG_MAX/4 when zero

// Step 3: iterate congruence solutions up to the target accuracy.
// T0 must satisfy the FqfAutomorphism invariants for the block presentation.
ApproxPadicMatrix lift_automorphism(const CompanionLattice& lam, const IMat& T0,
                                    long nu_target, int branch_seed = 0);

// Step 4 result: reflection data plus the certified (det, spin).
struct SpinResult {
  GammaElement value;
  std::vector<std::vector<Rat>> reflections;  // approximate reflection vectors (f-basis)
  QMat S;        // Gram-Schmidt base change
  long certified;  // accuracy bound after base change
};

// returns nullopt when a guard fails (retry with higher accuracy)
std::optional<SpinResult> certify_and_decompose(const ApproxPadicMatrix& aT,
                                                const CompanionLattice& lam);

struct PsiOptions {
  long nu0_override = 0;  // 0: use the default initial accuracy
  int max_retries = 8;
  int branch_seed = 0;
};

// Psi_p(g): a representative of (det, spin) of an isometry of L tensor Z_p
// inducing g on the discriminant form; qp a p-primary presentation, T0 the
// matrix of g on its generators, (r, d) rank and discriminant of L.
GammaElement psi_p(const Fqf& qp, const IMat& T0, long r, const Int& d, const Int& p,
                   const PsiOptions& opts = {});

// Sigma#(L tensor Z_p) inside Gamma_p as an F2 subspace (bit order: det, val,
// unit bits). Computed from the closed forms over the Jordan type.
F2Subspace sigma_sharp(const ZpJordanForm& J);

// GammaElement <-> bit vector of Gamma_p
F2Vec gamma_to_f2(const GammaElement& g);
GammaElement f2_to_gamma(const F2Vec& v, const Int& p);

}  // namespace k3
