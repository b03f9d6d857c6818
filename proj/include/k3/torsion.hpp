#pragma once
#include "k3/ade.hpp"

namespace k3 {

// class of a torsion section: for each configuration component, the simple
// fiber component met by the section (-1: the zero component theta_0)
struct TorsionClass {
  std::vector<int> met;
  Elt klass;  // class of u_L in D_L
  bool trivial() const {
    for (int m : met)
      if (m >= 0) return false;
    return true;
  }
};

// all torsion-section classes of the overlattice M = pr^{-1}(K); the count
// equals |K|
std::vector<TorsionClass> torsion_classes(const AdeConfiguration& phi,
                                          const DiscPresentation& D, const Subgroup& K);

// canonical per-class narrowness signature, e.g. "A5:1/1;A3:0/1;A1:3/6"
std::string narrowness_signature(const AdeConfiguration& phi, const TorsionClass& tc);

// sorted signatures of the nontrivial classes of one orbit representative
std::vector<std::string> narrowness_report(const AdeConfiguration& phi,
                                           const DiscPresentation& D, const Subgroup& K);

}  // namespace k3
