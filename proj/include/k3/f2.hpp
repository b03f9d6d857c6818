#pragma once
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace k3 {

// F2 row vectors as bitmasks, ambient dimension <= 64. Houses the spans used
// by the Miranda-Morrison bookkeeping (Sigma#, K, K').
struct F2Vec {
  int n = 0;
  uint64_t bits = 0;
  F2Vec() = default;
  F2Vec(int dim, uint64_t b) : n(dim), bits(b) {}
  bool get(int i) const { return (bits >> i) & 1; }
  void set(int i, bool v) {
    if (v) bits |= (uint64_t(1) << i);
    else bits &= ~(uint64_t(1) << i);
  }
  F2Vec operator+(const F2Vec& o) const {
    if (n != o.n) throw std::invalid_argument("F2Vec: dimension mismatch");
    return F2Vec(n, bits ^ o.bits);
  }
  bool operator==(const F2Vec& o) const { return n == o.n && bits == o.bits; }
  bool is_zero() const { return bits == 0; }
};

struct F2Subspace {
  int n = 0;                    // ambient dimension
  std::vector<uint64_t> basis;  // reduced row echelon, sorted by pivot

  explicit F2Subspace(int dim = 0) : n(dim) {
    if (dim < 0 || dim > 64) throw std::invalid_argument("F2Subspace: dim out of range");
  }

  int dim() const { return int(basis.size()); }

  // reduce v against the echelon basis (rows have distinct leading bits)
  uint64_t reduce(uint64_t v) const {
    for (uint64_t b : basis) {
      uint64_t lead = uint64_t(1) << (63 - __builtin_clzll(b));
      if (v & lead) v ^= b;
    }
    return v;
  }

  bool contains(const F2Vec& v) const {
    if (v.n != n) throw std::invalid_argument("F2Subspace: dimension mismatch");
    return reduce(v.bits) == 0;
  }

  // add a vector; returns true if it enlarged the span
  bool add(const F2Vec& v) {
    if (v.n != n) throw std::invalid_argument("F2Subspace: dimension mismatch");
    uint64_t r = reduce(v.bits);
    if (r == 0) return false;
    basis.push_back(r);
    // re-echelonize: keep rows sorted by leading bit, back-substitute
    for (size_t i = basis.size(); i-- > 0;)
      for (size_t j = i; j-- > 0;)
        if (lead_bit(basis[j]) < lead_bit(basis[i])) std::swap(basis[i], basis[j]);
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j)
        if (i != j && (basis[j] & lead_bit(basis[i]))) basis[j] ^= basis[i];
    return true;
  }

  void add_all(const F2Subspace& o) {
    if (o.n != n) throw std::invalid_argument("F2Subspace: dimension mismatch");
    for (uint64_t b : o.basis) add(F2Vec(n, b));
  }

  int quotient_dim() const { return n - dim(); }

  static uint64_t lead_bit(uint64_t v) { return uint64_t(1) << (63 - __builtin_clzll(v)); }
};

inline F2Subspace f2_span(int n, const std::vector<F2Vec>& vs) {
  F2Subspace s(n);
  for (auto& v : vs) s.add(v);
  return s;
}

inline bool f2_member(const F2Vec& v, const F2Subspace& s) { return s.contains(v); }

inline int f2_quotient_dim(int n, const std::vector<F2Vec>& vs) {
  return f2_span(n, vs).quotient_dim();
}

}  // namespace k3
