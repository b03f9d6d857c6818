#pragma once
#include "k3/num.hpp"

#include <optional>
#include <vector>

namespace k3 {

// Solve A x = b over F_p (column vector convention here; A is m x n).
// Free variables are set to 0 under the given column order; permuting
// column_order yields the other deterministic branches used by the
// well-definedness tests. Returns nullopt when rank(A) < rank(A|b).
inline std::optional<std::vector<long>> fp_solve_affine(
    long p, std::vector<std::vector<long>> A, std::vector<long> b,
    const std::vector<int>* column_order = nullptr) {
  int m = int(A.size());
  int n = m ? int(A[0].size()) : 0;
  if (int(b.size()) != m) throw std::invalid_argument("fp_solve_affine: shape mismatch");
  std::vector<int> cols(n);
  for (int j = 0; j < n; ++j) cols[j] = j;
  if (column_order) {
    if (int(column_order->size()) != n)
      throw std::invalid_argument("fp_solve_affine: bad column order");
    cols = *column_order;
  }
  auto norm = [p](long x) { long r = x % p; return r < 0 ? r + p : r; };
  for (auto& row : A)
    for (auto& x : row) x = norm(x);
  for (auto& x : b) x = norm(x);

  std::vector<int> pivot_col_of_row(m, -1);
  int row = 0;
  for (int ci = 0; ci < n && row < m; ++ci) {
    int col = cols[ci];
    int piv = -1;
    for (int i = row; i < m; ++i)
      if (A[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(A[piv], A[row]);
    std::swap(b[piv], b[row]);
    long inv = to_long(inv_mod(Int(A[row][col]), Int(p)));
    for (int j = 0; j < n; ++j) A[row][j] = norm(A[row][j] * inv);
    b[row] = norm(b[row] * inv);
    for (int i = 0; i < m; ++i) {
      if (i == row || A[i][col] == 0) continue;
      long f = A[i][col];
      for (int j = 0; j < n; ++j) A[i][j] = norm(A[i][j] - f * A[row][j]);
      b[i] = norm(b[i] - f * b[row]);
    }
    pivot_col_of_row[row] = col;
    ++row;
  }
  for (int i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<long> x(n, 0);
  for (int i = 0; i < row; ++i) x[pivot_col_of_row[i]] = b[i];
  return x;
}

}  // namespace k3
