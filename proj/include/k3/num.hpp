#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3 {

using Int = mpz_class;
using Rat = mpq_class;

struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& m) : std::runtime_error(m) {}
};
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};
struct check_error : std::runtime_error {
  explicit check_error(const std::string& m) : std::runtime_error(m) {}
};

inline Int int_pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline long to_long(const Int& x) {
  if (!x.fits_slong_p()) throw capacity_error("integer does not fit in long");
  return x.get_si();
}

// ord_p of a nonzero integer
inline long ord_p(const Int& x, const Int& p) {
  if (x == 0) throw std::domain_error("ord_p(0)");
  Int t = x;
  long v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    t /= p;
    ++v;
  }
  return v;
}

inline long ord_p(const Rat& x, const Int& p) {
  if (x == 0) throw std::domain_error("ord_p(0)");
  return ord_p(Int(x.get_num()), p) - ord_p(Int(x.get_den()), p);
}

// x / p^ord, the p-free part
inline Int unit_part(const Int& x, const Int& p) {
  Int t = abs(x);
  while (t != 0 && mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) t /= p;
  return sgn(x) < 0 ? Int(-t) : t;
}

inline Int mod_pos(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// inverse of a mod m, m > 1, gcd(a,m)=1
inline Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw std::domain_error("inv_mod: not invertible");
  return r;
}

inline bool is_prime(const Int& p) { return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

inline std::vector<std::pair<Int, long>> factor(Int n) {
  std::vector<std::pair<Int, long>> fs;
  n = abs(n);
  if (n <= 1) return fs;
  for (Int p = 2; p * p <= n; p = (p == 2 ? Int(3) : Int(p + 2))) {
    if (n % p == 0) {
      long e = 0;
      while (n % p == 0) { n /= p; ++e; }
      fs.push_back({p, e});
    }
  }
  if (n > 1) fs.push_back({n, 1});
  return fs;
}

inline std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> ps;
  for (auto& [p, e] : factor(n)) ps.push_back(p);
  return ps;
}

// Legendre symbol for p odd prime, a not divisible by p: +1 square, -1 not
inline int legendre(const Int& a, const Int& p) {
  Int r;
  mpz_powm(r.get_mpz_t(), mod_pos(a, p).get_mpz_t(), Int((p - 1) / 2).get_mpz_t(), p.get_mpz_t());
  if (r == 0) throw std::domain_error("legendre: p | a");
  return r == 1 ? 1 : -1;
}

// smallest positive quadratic nonresidue mod odd prime p
inline Int nonresidue(const Int& p) {
  for (Int n = 2;; ++n)
    if (legendre(n, p) < 0) return n;
}

}  // namespace k3
