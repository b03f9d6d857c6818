#pragma once
#include "k3/num.hpp"

#include <string>

namespace k3 {

// Square class of a nonzero rational in Q_p^x / (Q_p^x)^2, stored as the
// parity of ord_p plus the unit residue: one quadratic-residue bit for p odd,
// the odd residue mod 8 for p = 2 (units mod squares form (Z/2)^2 there).
struct SquareClass {
  Int p;
  bool val_parity = false;
  // p = 2: unit in {1,3,5,7}; p odd: unit in {1, n_p-flag}: store as bit
  int unit_mod8 = 1;       // used when p == 2
  bool nonresidue = false; // used when p odd

  SquareClass() : p(2) {}
  explicit SquareClass(const Int& prime) : p(prime) {}

  bool is_identity() const {
    return !val_parity && (p == 2 ? unit_mod8 == 1 : !nonresidue);
  }

  SquareClass operator*(const SquareClass& o) const {
    if (p != o.p) throw std::invalid_argument("SquareClass: prime mismatch");
    SquareClass r(p);
    r.val_parity = val_parity ^ o.val_parity;
    if (p == 2)
      r.unit_mod8 = (unit_mod8 * o.unit_mod8) % 8;
    else
      r.nonresidue = nonresidue ^ o.nonresidue;
    return r;
  }

  bool operator==(const SquareClass& o) const {
    return p == o.p && val_parity == o.val_parity &&
           (p == 2 ? unit_mod8 == o.unit_mod8 : nonresidue == o.nonresidue);
  }

  std::string str() const {
    std::string s = val_parity ? "p*" : "";
    if (p == 2) return s + std::to_string(unit_mod8);
    return s + (nonresidue ? "n" : "1");
  }
};

inline SquareClass square_class(const Int& p, const Rat& x) {
  if (x == 0) throw std::domain_error("square_class: x = 0");
  SquareClass c(p);
  Int num = x.get_num(), den = x.get_den();
  long v = ord_p(num, p) - ord_p(den, p);
  c.val_parity = (v % 2) != 0;
  Int u = unit_part(num, p), w = unit_part(den, p);
  if (p == 2) {
    // odd/odd: the class of u/w mod 8 equals u * w^-1 mod 8, and w^-1 = w mod 8
    Int m = mod_pos(u * w, 8);
    c.unit_mod8 = int(m.get_ui());
  } else {
    c.nonresidue = legendre(u, p) * legendre(w, p) < 0;
  }
  return c;
}

// An element of Gamma_p = Det x Q_p^x/(Q_p^x)^2.
struct GammaElement {
  int det = 1;  // +1 or -1
  SquareClass spin;

  GammaElement() = default;
  GammaElement(int d, SquareClass s) : det(d), spin(std::move(s)) {}

  GammaElement operator*(const GammaElement& o) const {
    return GammaElement(det * o.det, spin * o.spin);
  }
  bool operator==(const GammaElement& o) const { return det == o.det && spin == o.spin; }
  bool in_gamma_p0() const { return !spin.val_parity; }

  std::string str() const {
    return std::string(det < 0 ? "-" : "+") + "," + spin.str();
  }
};

inline GammaElement gamma_identity(const Int& p) { return GammaElement(1, SquareClass(p)); }

// rank of Gamma_p as an F2 vector space
inline int gamma_rank(const Int& p) { return p == 2 ? 4 : 3; }

// F2 coordinates of a GammaElement: (det, val, unit bits...). For p = 2 the
// unit bits are the exponents of 3 and 5 in (Z/8)^x = <3,5>; 7 = 3*5.
inline std::vector<bool> gamma_bits(const GammaElement& g) {
  std::vector<bool> b;
  b.push_back(g.det < 0);
  b.push_back(g.spin.val_parity);
  if (g.spin.p == 2) {
    int u = g.spin.unit_mod8;
    b.push_back(u == 3 || u == 7);
    b.push_back(u == 5 || u == 7);
  } else {
    b.push_back(g.spin.nonresidue);
  }
  return b;
}

}  // namespace k3
