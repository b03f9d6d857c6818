#pragma once
#include "k3/num.hpp"

#include <cassert>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <sstream>

namespace k3 {

// Dense row-major matrix. Vectors are rows throughout the project; a bilinear
// form G pairs rows as x * G * y^T.
template <class T>
struct Mat {
  int r = 0, c = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int rows, int cols) : r(rows), c(cols), a(size_t(rows) * cols) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    r = int(rows.size());
    c = r ? int(rows.begin()->size()) : 0;
    a.reserve(size_t(r) * c);
    for (auto& row : rows) {
      assert(int(row.size()) == c);
      for (auto& x : row) a.push_back(x);
    }
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(int i, int j) { return a[size_t(i) * c + j]; }
  const T& operator()(int i, int j) const { return a[size_t(i) * c + j]; }

  bool operator==(const Mat& o) const { return r == o.r && c == o.c && a == o.a; }

  Mat transpose() const {
    Mat t(c, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    assert(c == o.r);
    Mat m(r, o.c);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < c; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.c; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }

  Mat operator+(const Mat& o) const {
    assert(r == o.r && c == o.c);
    Mat m(r, c);
    for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  Mat operator-(const Mat& o) const {
    assert(r == o.r && c == o.c);
    Mat m(r, c);
    for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  Mat operator-() const {
    Mat m(r, c);
    for (size_t i = 0; i < a.size(); ++i) m.a[i] = -a[i];
    return m;
  }
  Mat operator*(const T& s) const {
    Mat m(r, c);
    for (size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] * s;
    return m;
  }

  std::vector<T> row(int i) const {
    return std::vector<T>(a.begin() + size_t(i) * c, a.begin() + size_t(i + 1) * c);
  }
  void set_row(int i, const std::vector<T>& v) {
    assert(int(v.size()) == c);
    for (int j = 0; j < c; ++j) (*this)(i, j) = v[j];
  }
  void swap_rows(int i, int j) {
    for (int k = 0; k < c; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  // row i += s * row j
  void add_row(int i, int j, const T& s) {
    for (int k = 0; k < c; ++k) (*this)(i, k) += s * (*this)(j, k);
  }
  bool is_zero() const {
    for (auto& x : a)
      if (x != 0) return false;
    return true;
  }
  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r; ++i) {
      os << (i ? "; " : "");
      for (int j = 0; j < c; ++j) os << (j ? "," : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
  }
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

template <class T>
std::vector<T> row_times(const std::vector<T>& v, const Mat<T>& m) {
  assert(int(v.size()) == m.r);
  std::vector<T> out(m.c, T(0));
  for (int i = 0; i < m.r; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < m.c; ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

template <class T>
T dot_form(const std::vector<T>& x, const Mat<T>& g, const std::vector<T>& y) {
  T s(0);
  auto gy = row_times(y, g.transpose());
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
  return s;
}

inline QMat to_rational(const IMat& m) {
  QMat q(m.r, m.c);
  for (int i = 0; i < m.r; ++i)
    for (int j = 0; j < m.c; ++j) q(i, j) = Rat(m(i, j));
  return q;
}

// ---- exact Gaussian elimination over Q ----

inline Rat det(const QMat& m0) {
  assert(m0.r == m0.c);
  QMat m = m0;
  Rat d(1);
  int n = m.r;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) != 0) { piv = i; break; }
    if (piv < 0) return Rat(0);
    if (piv != k) { m.swap_rows(piv, k); d = -d; }
    d *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

inline Int det(const IMat& m) {
  Rat d = det(to_rational(m));
  assert(d.get_den() == 1);
  return Int(d.get_num());
}

inline QMat inverse(const QMat& m0) {
  assert(m0.r == m0.c);
  int n = m0.r;
  QMat m = m0, inv = QMat::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m(i, k) != 0) { piv = i; break; }
    if (piv < 0) throw std::domain_error("inverse: singular matrix");
    if (piv != k) { m.swap_rows(piv, k); inv.swap_rows(piv, k); }
    Rat d = m(k, k);
    for (int j = 0; j < n; ++j) { m(k, j) /= d; inv(k, j) /= d; }
    for (int i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rat f = m(i, k);
      for (int j = 0; j < n; ++j) { m(i, j) -= f * m(k, j); inv(i, j) -= f * inv(k, j); }
    }
  }
  return inv;
}

inline int rank(const QMat& m0) {
  QMat m = m0;
  int rk = 0;
  for (int col = 0; col < m.c && rk < m.r; ++col) {
    int piv = -1;
    for (int i = rk; i < m.r; ++i)
      if (m(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    m.swap_rows(piv, rk);
    for (int i = rk + 1; i < m.r; ++i) {
      if (m(i, col) == 0) continue;
      Rat f = m(i, col) / m(rk, col);
      for (int j = col; j < m.c; ++j) m(i, j) -= f * m(rk, j);
    }
    ++rk;
  }
  return rk;
}

// ---- Hermite / Smith normal forms over Z ----

// Row-style HNF: returns H in row echelon form with rowspan(H) = rowspan(A),
// pivots positive, entries above a pivot reduced mod the pivot. If U is given,
// accumulates row ops so that H = U * A (U unimodular, square r x r).
inline IMat hnf(const IMat& A, IMat* U = nullptr) {
  IMat h = A;
  if (U) *U = IMat::identity(A.r);
  int row = 0;
  for (int col = 0; col < h.c && row < h.r; ++col) {
    // reduce below-row entries in this column by gcd steps
    while (true) {
      int piv = -1;
      for (int i = row; i < h.r; ++i)
        if (h(i, col) != 0) {
          if (piv < 0 || abs(h(i, col)) < abs(h(piv, col))) piv = i;
        }
      if (piv < 0) break;
      if (piv != row) {
        h.swap_rows(piv, row);
        if (U) U->swap_rows(piv, row);
      }
      bool done = true;
      for (int i = row + 1; i < h.r; ++i) {
        if (h(i, col) == 0) continue;
        Int q = h(i, col) / h(row, col);  // truncated division is fine for descent
        if (q != 0) {
          h.add_row(i, row, -q);
          if (U) U->add_row(i, row, -q);
        }
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      for (int j = 0; j < h.c; ++j) h(row, j) = -h(row, j);
      if (U)
        for (int j = 0; j < U->c; ++j) (*U)(row, j) = -(*U)(row, j);
    }
    for (int i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
      if (q != 0) {
        h.add_row(i, row, -q);
        if (U) U->add_row(i, row, -q);
      }
    }
    ++row;
  }
  return h;
}

// Smith normal form: U*A*V = D diagonal with d1 | d2 | ... ; returns D and the
// unimodular transforms.
inline IMat snf(const IMat& A, IMat& U, IMat& V) {
  IMat d = A;
  U = IMat::identity(A.r);
  V = IMat::identity(A.c);
  int n = std::min(d.r, d.c);
  auto col_add = [&](IMat& m, int i, int j, const Int& s) {  // col i += s*col j
    for (int k = 0; k < m.r; ++k) m(k, i) += s * m(k, j);
  };
  auto col_swap = [&](IMat& m, int i, int j) {
    for (int k = 0; k < m.r; ++k) std::swap(m(k, i), m(k, j));
  };
  for (int k = 0; k < n; ++k) {
    while (true) {
      // find minimal nonzero entry in the remaining block
      int pi = -1, pj = -1;
      for (int i = k; i < d.r; ++i)
        for (int j = k; j < d.c; ++j)
          if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) { pi = i; pj = j; }
      if (pi < 0) { pi = pj = -1; break; }
      if (pi != k) { d.swap_rows(pi, k); U.swap_rows(pi, k); }
      if (pj != k) { col_swap(d, pj, k); col_swap(V, pj, k); }
      bool clean = true;
      for (int i = k + 1; i < d.r; ++i)
        if (d(i, k) != 0) {
          Int q = d(i, k) / d(k, k);
          d.add_row(i, k, -q);
          U.add_row(i, k, -q);
          if (d(i, k) != 0) clean = false;
        }
      for (int j = k + 1; j < d.c; ++j)
        if (d(k, j) != 0) {
          Int q = d(k, j) / d(k, k);
          col_add(d, j, k, -q);
          col_add(V, j, k, -q);
          if (d(k, j) != 0) clean = false;
        }
      if (!clean) continue;
      // ensure divisibility d(k,k) | d(i,j)
      bool divides = true;
      for (int i = k + 1; i < d.r && divides; ++i)
        for (int j = k + 1; j < d.c && divides; ++j)
          if (d(i, j) % d(k, k) != 0) {
            d.add_row(k, i, Int(1));
            U.add_row(k, i, Int(1));
            divides = false;
          }
      if (divides) break;
    }
    if (d(k, k) < 0) {
      for (int j = 0; j < d.c; ++j) d(k, j) = -d(k, j);
      for (int j = 0; j < U.c; ++j) U(k, j) = -U(k, j);
    }
  }
  return d;
}

// Solve x * A = b over Z (x a row vector); returns false if no solution.
inline bool solve_left(const IMat& A, const std::vector<Int>& b, std::vector<Int>& x) {
  IMat U, V;
  IMat D = snf(A, U, V);
  // x A = b  <=>  (x U^-1) D = b V  <=>  y D = bV with x = y U
  std::vector<Int> bv = row_times(b, V);
  int n = std::min(D.r, D.c);
  std::vector<Int> y(A.r, Int(0));
  for (int j = 0; j < D.c; ++j) {
    Int dj = j < n ? D(j, j) : Int(0);
    if (dj == 0) {
      if (bv[j] != 0) return false;
    } else {
      if (bv[j] % dj != 0) return false;
      if (j < A.r) y[j] = bv[j] / dj;
      else if (bv[j] != 0) return false;
    }
  }
  x = row_times(y, U);
  return true;
}

// Basis (rows) of the left kernel {x : x A = 0} over Z.
inline IMat left_kernel(const IMat& A) {
  IMat U, V;
  IMat D = snf(A, U, V);
  int n = std::min(D.r, D.c);
  std::vector<int> zero_rows;
  for (int i = 0; i < A.r; ++i)
    if (i >= n || D(i, i) == 0) zero_rows.push_back(i);
  IMat K(int(zero_rows.size()), A.r);
  for (size_t t = 0; t < zero_rows.size(); ++t)
    for (int j = 0; j < A.r; ++j) K(int(t), j) = U(zero_rows[t], j);
  return K;
}

}  // namespace k3
