#pragma once

#include <cstdint>
#include <vector>

#include "modvis/intmatrix.hpp"

namespace modvis {

// Word-size linear algebra mod a prime p < 2^31, used as the fast layer
// under the exact solvers (rank filters, nullspace shapes, CRT residues).
namespace modp {

inline uint64_t add(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint64_t sub(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
inline uint64_t mul(uint64_t a, uint64_t b, uint64_t p) { return (a * b) % p; }

inline uint64_t pow(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t inv(uint64_t a, uint64_t p) { return pow(a, p - 2, p); }

inline uint64_t from_int(const Int& x, uint64_t p) {
  Int r = x % Int(static_cast<unsigned long>(p));
  if (r < 0) r += Int(static_cast<unsigned long>(p));
  return r.get_ui();
}

using Mat = std::vector<std::vector<uint64_t>>;

inline Mat reduce(const IntegerMatrix& m, uint64_t p) {
  Mat a(m.rows(), std::vector<uint64_t>(m.cols()));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) a[i][j] = from_int(m(i, j), p);
  return a;
}

// In-place reduced row echelon form; returns pivot column per pivot row.
inline std::vector<long> rref(Mat& a, uint64_t p) {
  std::vector<long> pivots;
  if (a.empty()) return pivots;
  long rows = static_cast<long>(a.size()), cols = static_cast<long>(a[0].size());
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    uint64_t ip = inv(a[r][c], p);
    for (long j = c; j < cols; ++j) a[r][j] = mul(a[r][j], ip, p);
    for (long i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      uint64_t f = a[i][c];
      for (long j = c; j < cols; ++j) a[i][j] = sub(a[i][j], mul(f, a[r][j], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline long rank(Mat a, uint64_t p) { return static_cast<long>(rref(a, p).size()); }

// Right-nullspace basis {v : A v = 0}, one row per basis vector, in the
// canonical RREF parametrization (free variable -> unit coefficient).
inline Mat nullspace(Mat a, uint64_t p) {
  if (a.empty()) return {};
  long cols = static_cast<long>(a[0].size());
  std::vector<long> pivots = rref(a, p);
  std::vector<bool> is_pivot(cols, false);
  std::vector<long> pivot_row(cols, -1);
  for (size_t i = 0; i < pivots.size(); ++i) {
    is_pivot[pivots[i]] = true;
    pivot_row[pivots[i]] = static_cast<long>(i);
  }
  Mat basis;
  for (long f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<uint64_t> v(cols, 0);
    v[f] = 1;
    for (long c = 0; c < cols; ++c)
      if (is_pivot[c]) v[c] = sub(0, a[pivot_row[c]][f], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace modp
}  // namespace modvis
