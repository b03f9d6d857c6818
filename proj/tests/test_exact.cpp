#include <doctest.h>

#include "k3/f2.hpp"
#include "k3/fp.hpp"
#include "k3/sqclass.hpp"

using namespace k3;

namespace {

// independent oracle: x is a p-adic square iff t^2 == x (up to even p-power
// scaling) has a solution mod p^k for a generous k
bool is_padic_square_bruteforce(const Int& p, const Rat& x) {
  long v = ord_p(x, p);
  if (v % 2 != 0) return false;
  Rat unit = (v >= 0) ? Rat(x / Rat(int_pow(p, v))) : Rat(x * Rat(int_pow(p, -v)));
  Int pk = int_pow(p, p == 2 ? 6 : 4);
  Int num = mod_pos(unit.get_num(), pk), den = mod_pos(unit.get_den(), pk);
  Int u = mod_pos(num * inv_mod(den, pk), pk);
  for (Int t = 1; t < pk; ++t)
    if (mod_pos(t * t - u, pk) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("square_class examples") {
  // (p=3, x=3/8): val parity 1, nonresidue unit (1/8 == 2 mod squares, 2 is NR mod 3)
  auto c = square_class(Int(3), Rat(3, 8));
  CHECK(c.val_parity);
  CHECK(c.nonresidue);
  CHECK_FALSE(is_padic_square_bruteforce(Int(3), Rat(1, 8)));

  // (p=2, x=4): identity (perfect square)
  auto c2 = square_class(Int(2), Rat(4));
  CHECK(c2.is_identity());

  // (p=2, x=-1): unit 7 mod 8
  auto c3 = square_class(Int(2), Rat(-1));
  CHECK_FALSE(c3.val_parity);
  CHECK(c3.unit_mod8 == 7);

  CHECK_THROWS_AS(square_class(Int(3), Rat(0)), std::domain_error);
}

TEST_CASE("square_class matches the p-adic square oracle") {
  std::vector<Rat> xs = {Rat(3, 8), Rat(-5, 7), Rat(12), Rat(1, 6), Rat(-49, 20), Rat(11, 9),
                         Rat(18), Rat(2), Rat(-4, 3)};
  for (Int p : {Int(2), Int(3), Int(5), Int(7)})
    for (auto& x : xs)
      CHECK(square_class(p, x).is_identity() == is_padic_square_bruteforce(p, x));
}

TEST_CASE("square_class is a homomorphism") {
  std::vector<Rat> xs = {Rat(3, 8), Rat(-5, 7), Rat(12), Rat(1, 6), Rat(-49, 20), Rat(11, 9)};
  for (Int p : {Int(2), Int(3), Int(5), Int(7)})
    for (auto& x : xs)
      for (auto& y : xs) {
        auto lhs = square_class(p, x * y);
        auto rhs = square_class(p, x) * square_class(p, y);
        CHECK(lhs == rhs);
      }
  for (Int p : {Int(2), Int(3), Int(5)})
    for (auto& x : xs) CHECK(square_class(p, x * x).is_identity());
}

TEST_CASE("GammaElement group structure") {
  for (Int p : {Int(2), Int(5)}) {
    std::vector<GammaElement> elems;
    std::vector<Rat> reps = {Rat(1), Rat(-1), Rat(2), Rat(3), Rat(int_pow(p, 1))};
    for (int d : {1, -1})
      for (auto& r : reps) elems.push_back(GammaElement(d, square_class(p, r)));
    for (auto& a : elems) {
      CHECK((a * a) == GammaElement(1, SquareClass(p)));  // self-inverse
      for (auto& b : elems) CHECK((a * b) == (b * a));     // commutative
    }
    CHECK(gamma_rank(p) == (p == 2 ? 4 : 3));
  }
  GammaElement g(1, square_class(Int(3), Rat(2)));
  CHECK(g.in_gamma_p0());
  GammaElement h(1, square_class(Int(3), Rat(3)));
  CHECK_FALSE(h.in_gamma_p0());
}

TEST_CASE("F2 span / member / quotient_dim") {
  CHECK(f2_span(3, {}).dim() == 0);
  CHECK(f2_quotient_dim(3, {}) == 3);
  std::vector<F2Vec> v1 = {F2Vec(2, 0b01), F2Vec(2, 0b11)};
  CHECK(f2_quotient_dim(2, v1) == 0);
  CHECK(f2_member(F2Vec(2, 0b10), f2_span(2, v1)));
  std::vector<F2Vec> v2 = {F2Vec(3, 0b111)};
  CHECK(f2_quotient_dim(3, v2) == 2);
  CHECK_FALSE(f2_member(F2Vec(3, 0b001), f2_span(3, v2)));

  // adding generators never increases the quotient dimension
  std::vector<F2Vec> base = {F2Vec(4, 0b1010), F2Vec(4, 0b0110)};
  int q0 = f2_quotient_dim(4, base);
  for (uint64_t extra = 0; extra < 16; ++extra) {
    auto more = base;
    more.push_back(F2Vec(4, extra));
    CHECK(f2_quotient_dim(4, more) <= q0);
  }
}

TEST_CASE("fp_solve_affine") {
  auto s = fp_solve_affine(5, {{1, 0}, {0, 1}}, {3, 4});
  REQUIRE(s);
  CHECK((*s)[0] == 3);
  CHECK((*s)[1] == 4);
  auto z = fp_solve_affine(3, {{0, 0}}, {0});
  REQUIRE(z);
  CHECK((*z)[0] == 0);
  CHECK((*z)[1] == 0);
  // [[1,1]] b=[1] over F2: free variable set to 0 -> (1,0)
  auto t = fp_solve_affine(2, {{1, 1}}, {1});
  REQUIRE(t);
  CHECK((*t)[0] == 1);
  CHECK((*t)[1] == 0);
  CHECK_FALSE(fp_solve_affine(3, {{0, 0}}, {1}).has_value());
  // permuted column order flips which variable is free
  std::vector<int> order = {1, 0};
  auto t2 = fp_solve_affine(2, {{1, 1}}, {1}, &order);
  REQUIRE(t2);
  CHECK((*t2)[0] == 0);
  CHECK((*t2)[1] == 1);
}
