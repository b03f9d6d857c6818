#pragma once
#include "k3/ade.hpp"
#include "k3/mm.hpp"

#include <optional>
#include <string>

namespace k3 {

struct MarkingGroupSpec {
  enum Kind { Full, Trivial, Explicit } kind = Full;
  std::vector<Perm> gens;  // for Explicit

  static MarkingGroupSpec full() { return {Full, {}}; }
  static MarkingGroupSpec trivial() { return {Trivial, {}}; }
};

struct ClassResult {
  std::string key;
  Int stab_order = 0;       // |Stab(M)| inside Aut(Phi)
  size_t gbar_size = 0;     // distinct generator images used
  size_t gbar_order = 0;    // |Gbar| (0 when past the closure cap)
  std::string branch;       // "definite" | "mm"
  std::vector<BinaryForm> forms;               // definite branch
  std::vector<std::pair<long, long>> rc;       // per form [r, c]
  long mm_dim = 0, mm_conj_dim = 0;            // mm branch data
  Int count = 0;
  Int count_mod_conj = 0;
  std::vector<std::string> narrowness;  // signatures of nontrivial torsion classes
};

struct ComponentReport {
  std::string phi;
  std::vector<Int> torsion;
  std::string group;
  std::vector<ClassResult> classes;
  Int total = 0;
  Int total_mod_conj = 0;
  bool realized = true;
};

// all K with pr^{-1}(K)/L iso A, Roots preserved, genus nonempty;
// deterministic order
std::vector<Subgroup> enumerate_E(const AdeConfiguration& phi, const DiscPresentation& D,
                                  const std::vector<Int>& A);

// orbit representatives and stabilizer generators for the G-action on E
struct OrbitData {
  Subgroup rep;
  std::string key;          // canonical (minimal) subgroup key over the orbit
  size_t orbit_size = 0;
  std::vector<Perm> stab_gens;
};
std::vector<OrbitData> g_orbits_and_stabilizers(const AdeConfiguration& phi,
                                                const DiscPresentation& D,
                                                const std::vector<Subgroup>& E,
                                                const std::vector<Perm>& Ggens);

// induced image of a configuration automorphism on D_M = K-perp / K
IMat gbar_image_of_perm(const AdeConfiguration& phi, const DiscPresentation& D,
                        const SubQuotient& DM, const Perm& g);

// generators of the subgroup of Stab(M) acting trivially on K = M/L
std::vector<Perm> kernel_on_K_generators(const AdeConfiguration& phi, const DiscPresentation& D,
                                         const OrbitData& od);

ComponentReport compute_components(const std::string& phi_spec, const std::vector<Int>& A,
                                   const MarkingGroupSpec& G, const PsiOptions& psi_opts = {});

std::string report_json(const ComponentReport& r);
std::string report_text(const ComponentReport& r);

std::vector<Int> parse_torsion(const std::string& s);  // "[1]", "[2]", "[3,3]"

}  // namespace k3
