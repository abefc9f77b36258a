#include "modvis/lattice.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "modvis/modmat.hpp"

namespace modvis {

namespace {

// Quotient rounded to nearest, used to keep elimination entries small.
Int round_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int two_r = 2 * abs(r);
  if (two_r > abs(b)) q += 1;
  return q;
}

void row_axpy(std::vector<Int>& dst, const std::vector<Int>& src, const Int& q) {
  if (q == 0) return;
  for (size_t i = 0; i < dst.size(); ++i)
    if (src[i] != 0) dst[i] -= q * src[i];
}

long first_nonzero(const std::vector<Int>& v, long from = 0) {
  for (long i = from; i < static_cast<long>(v.size()); ++i)
    if (v[i] != 0) return i;
  return -1;
}

}  // namespace

IntegerMatrix hnf_rows(const IntegerMatrix& m) {
  const long n = m.cols();
  std::map<long, std::vector<Int>> pivots;  // pivot column -> row

  auto insert = [&](std::vector<Int> row) {
    long c = first_nonzero(row);
    while (c >= 0) {
      auto it = pivots.find(c);
      if (it == pivots.end()) {
        if (row[c] < 0)
          for (auto& x : row) x = -x;
        pivots.emplace(c, std::move(row));
        return;
      }
      std::vector<Int>& p = it->second;
      if (mpz_divisible_p(row[c].get_mpz_t(), p[c].get_mpz_t())) {
        row_axpy(row, p, row[c] / p[c]);
      } else {
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p[c].get_mpz_t(), row[c].get_mpz_t());
        Int pc_g = p[c] / g, rc_g = row[c] / g;
        std::vector<Int> newp(n);
        for (long j = 0; j < n; ++j) newp[j] = s * p[j] + t * row[j];
        for (long j = 0; j < n; ++j) row[j] = pc_g * row[j] - rc_g * p[j];
        p = std::move(newp);
      }
      c = first_nonzero(row, c);
    }
  };

  for (long i = 0; i < m.rows(); ++i) insert(m.row(i));

  // Reduce entries above each pivot into [0, pivot).
  std::vector<std::pair<long, std::vector<Int>>> rows(pivots.begin(), pivots.end());
  for (size_t j = 0; j < rows.size(); ++j) {
    const long cj = rows[j].first;
    for (size_t i = 0; i < j; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i].second[cj].get_mpz_t(), rows[j].second[cj].get_mpz_t());
      row_axpy(rows[i].second, rows[j].second, q);
    }
  }

  IntegerMatrix h(static_cast<long>(rows.size()), n);
  for (size_t i = 0; i < rows.size(); ++i) h.set_row(static_cast<long>(i), rows[i].second);
  return h;
}

SnfResult smith_normal_form(const IntegerMatrix& m_in) {
  const long rows = m_in.rows(), cols = m_in.cols();
  SnfResult res{m_in, IntegerMatrix::identity(rows), IntegerMatrix::identity(cols),
                IntegerMatrix::identity(cols)};
  IntegerMatrix& d = res.d;
  IntegerMatrix& u = res.u;
  IntegerMatrix& v = res.v;
  IntegerMatrix& vinv = res.vinv;

  auto row_op = [&](long i, long j, const Int& q) {  // row_i -= q * row_j
    if (q == 0) return;
    for (long c = 0; c < cols; ++c)
      if (d(j, c) != 0) d(i, c) -= q * d(j, c);
    for (long c = 0; c < rows; ++c)
      if (u(j, c) != 0) u(i, c) -= q * u(j, c);
  };
  auto row_swap = [&](long i, long j) {
    if (i == j) return;
    for (long c = 0; c < cols; ++c) swap(d(i, c), d(j, c));
    for (long c = 0; c < rows; ++c) swap(u(i, c), u(j, c));
  };
  auto col_op = [&](long j, long t, const Int& q) {  // col_j -= q * col_t
    if (q == 0) return;
    for (long r = 0; r < rows; ++r)
      if (d(r, t) != 0) d(r, j) -= q * d(r, t);
    for (long r = 0; r < cols; ++r)
      if (v(r, t) != 0) v(r, j) -= q * v(r, t);
    for (long c = 0; c < cols; ++c)
      if (vinv(j, c) != 0) vinv(t, c) += q * vinv(j, c);
  };
  auto col_swap = [&](long i, long j) {
    if (i == j) return;
    for (long r = 0; r < rows; ++r) swap(d(r, i), d(r, j));
    for (long r = 0; r < cols; ++r) swap(v(r, i), v(r, j));
    for (long c = 0; c < cols; ++c) swap(vinv(i, c), vinv(j, c));
  };

  const long nmin = std::min(rows, cols);
  for (long t = 0; t < nmin; ++t) {
    // Move the smallest nonzero entry of the trailing block to (t, t).
    long pi = -1, pj = -1;
    for (long i = t; i < rows; ++i)
      for (long j = t; j < cols; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      for (long i = t + 1; i < rows; ++i)
        while (d(i, t) != 0) {
          row_op(i, t, round_div(d(i, t), d(t, t)));
          if (d(i, t) != 0) row_swap(i, t);
        }
      bool row_clear = true;
      for (long j = t + 1; j < cols; ++j)
        while (d(t, j) != 0) {
          col_op(j, t, round_div(d(t, j), d(t, t)));
          if (d(t, j) != 0) col_swap(j, t);
        }
      for (long i = t + 1; i < rows && row_clear; ++i)
        if (d(i, t) != 0) row_clear = false;
      if (!row_clear) continue;

      // Divisibility: pivot must divide every remaining entry.
      long bi = -1;
      for (long i = t + 1; i < rows && bi < 0; ++i)
        for (long j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      row_op(t, bi, Int(-1));  // fold the offending row in and re-eliminate
    }

    if (d(t, t) < 0) {
      for (long c = 0; c < cols; ++c) d(t, c) = -d(t, c);
      for (long c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  return res;
}

std::vector<Int> invariant_factors(const IntegerMatrix& m) {
  SnfResult s = smith_normal_form(m);
  std::vector<Int> out;
  for (long i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
    if (s.d(i, i) != 0) out.push_back(s.d(i, i));
  return out;
}

IntegerMatrix left_kernel(const IntegerMatrix& m) {
  const long r = m.rows(), c = m.cols();
  IntegerMatrix aug(r, c + r);
  for (long i = 0; i < r; ++i) {
    for (long j = 0; j < c; ++j) aug(i, j) = m(i, j);
    aug(i, c + i) = 1;
  }
  IntegerMatrix h = hnf_rows(aug);
  std::vector<long> kernel_rows;
  for (long i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (long j = 0; j < c && zero; ++j)
      if (h(i, j) != 0) zero = false;
    if (zero) kernel_rows.push_back(i);
  }
  IntegerMatrix k(static_cast<long>(kernel_rows.size()), r);
  for (size_t i = 0; i < kernel_rows.size(); ++i)
    for (long j = 0; j < r; ++j) k(static_cast<long>(i), j) = h(kernel_rows[i], c + j);
  return hnf_rows(k);
}

Int determinant(const IntegerMatrix& m_in) {
  assert(m_in.rows() == m_in.cols());
  const long n = m_in.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m_in;
  Int prev = 1;
  int sign = 1;
  for (long k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      long piv = -1;
      for (long i = k + 1; i < n && piv < 0; ++i)
        if (a(i, k) != 0) piv = i;
      if (piv < 0) return 0;
      for (long j = 0; j < n; ++j) swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign < 0 ? Int(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& m) {
  assert(m.rows() == m.cols());
  const long n = m.rows();
  if (n == 0) return Rational(1);
  Int den = m.denominator();
  Int det_scaled = determinant(m.scaled(den));
  Rational d(det_scaled);
  Rational scale(1);
  for (long i = 0; i < n; ++i) scale *= Rational(den);
  return d / scale;
}

// --- exact solver (CRT + rational reconstruction, verified) ------------------

namespace {

const std::array<uint64_t, 40>& solver_primes() {
  static const std::array<uint64_t, 40> ps = [] {
    std::array<uint64_t, 40> out{};
    uint64_t c = (1ull << 31) - 1;
    for (size_t i = 0; i < out.size();) {
      if (is_prime(static_cast<long>(c))) out[i++] = c;
      --c;
      while (c % 2 == 0) --c;
    }
    return out;
  }();
  return ps;
}

bool rational_reconstruct(const Int& r, const Int& m, Rational& out) {
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int((m - 1) / 2).get_mpz_t());
  Int u0 = m, u1 = 0, v0 = r % m, v1 = 1;
  if (v0 < 0) v0 += m;
  while (v0 > bound) {
    Int q = u0 / v0;
    Int t0 = u0 - q * v0, t1 = u1 - q * v1;
    u0 = v0;
    u1 = v1;
    v0 = t0;
    v1 = t1;
  }
  if (v1 == 0 || abs(v1) > bound) return false;
  Int num = v0, den = v1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return false;
  out = make_rational(num, den);
  return true;
}

// Solves the square system S X = C mod p; returns false if S is singular mod p.
bool solve_square_modp(modp::Mat s, modp::Mat c, uint64_t p, modp::Mat& x) {
  const long n = static_cast<long>(s.size());
  const long k = n > 0 ? static_cast<long>(c[0].size()) : 0;
  for (long col = 0; col < n; ++col) {
    long piv = -1;
    for (long i = col; i < n && piv < 0; ++i)
      if (s[i][col] != 0) piv = i;
    if (piv < 0) return false;
    std::swap(s[col], s[piv]);
    std::swap(c[col], c[piv]);
    uint64_t ip = modp::inv(s[col][col], p);
    for (long j = col; j < n; ++j) s[col][j] = modp::mul(s[col][j], ip, p);
    for (long j = 0; j < k; ++j) c[col][j] = modp::mul(c[col][j], ip, p);
    for (long i = 0; i < n; ++i) {
      if (i == col || s[i][col] == 0) continue;
      uint64_t f = s[i][col];
      for (long j = col; j < n; ++j) s[i][j] = modp::sub(s[i][j], modp::mul(f, s[col][j], p), p);
      for (long j = 0; j < k; ++j) c[i][j] = modp::sub(c[i][j], modp::mul(f, c[col][j], p), p);
    }
  }
  x = std::move(c);
  return true;
}

}  // namespace

RationalMatrix solve_right(const IntegerMatrix& a, const IntegerMatrix& b) {
  const long m = a.rows(), n = a.cols(), k = b.cols();
  if (b.rows() != m) throw AmbientMismatch("solve_right: row count");
  if (n == 0) {
    if (!b.is_zero()) throw SpanMismatch("solve_right: empty basis");
    return RationalMatrix(0, k);
  }

  // Pick a set of n pivot rows using the first prime of full rank, and certify
  // inconsistency when the augmented matrix has larger rank.
  std::vector<long> pivot_rows;
  for (uint64_t p : solver_primes()) {
    modp::Mat w = modp::reduce(a, p);
    std::vector<long> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    long r = 0;
    for (long c = 0; c < n && r < m; ++c) {
      long piv = -1;
      for (long i = r; i < m && piv < 0; ++i)
        if (w[i][c] != 0) piv = i;
      if (piv < 0) continue;
      std::swap(w[piv], w[r]);
      std::swap(perm[piv], perm[r]);
      uint64_t ipv = modp::inv(w[r][c], p);
      for (long j = c; j < n; ++j) w[r][j] = modp::mul(w[r][j], ipv, p);
      for (long i = r + 1; i < m; ++i) {
        if (w[i][c] == 0) continue;
        uint64_t f = w[i][c];
        for (long j = c; j < n; ++j) w[i][j] = modp::sub(w[i][j], modp::mul(f, w[r][j], p), p);
      }
      ++r;
    }
    if (r == n) {
      pivot_rows.assign(perm.begin(), perm.begin() + n);
      modp::Mat aug = modp::reduce(a, p);
      modp::Mat bp = modp::reduce(b, p);
      for (long i = 0; i < m; ++i) aug[i].insert(aug[i].end(), bp[i].begin(), bp[i].end());
      if (modp::rank(aug, p) > n) throw SpanMismatch("solve_right: inconsistent system");
      break;
    }
  }
  if (pivot_rows.empty()) throw SpanMismatch("solve_right: rank-deficient matrix");

  IntegerMatrix as(n, n), bs(n, k);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) as(i, j) = a(pivot_rows[i], j);
    for (long j = 0; j < k; ++j) bs(i, j) = b(pivot_rows[i], j);
  }

  std::vector<std::vector<Int>> acc(n, std::vector<Int>(k, Int(0)));
  Int modulus = 1;
  int used = 0;
  for (uint64_t p : solver_primes()) {
    modp::Mat xp;
    if (!solve_square_modp(modp::reduce(as, p), modp::reduce(bs, p), p, xp)) continue;
    Int pz(static_cast<unsigned long>(p));
    if (used == 0) {
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < k; ++j) acc[i][j] = Int(static_cast<unsigned long>(xp[i][j]));
      modulus = pz;
    } else {
      Int minv;
      mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < k; ++j) {
          Int delta = (Int(static_cast<unsigned long>(xp[i][j])) - acc[i][j]) % pz;
          if (delta < 0) delta += pz;
          delta = (delta * minv) % pz;
          acc[i][j] += modulus * delta;
        }
      modulus *= pz;
    }
    ++used;
    if (used < 2) continue;

    RationalMatrix x(n, k);
    bool ok = true;
    for (long i = 0; i < n && ok; ++i)
      for (long j = 0; j < k && ok; ++j) {
        Rational q;
        if (!rational_reconstruct(acc[i][j], modulus, q))
          ok = false;
        else
          x(i, j) = q;
      }
    if (!ok) continue;

    Int den = x.denominator();
    IntegerMatrix xs = x.scaled(den);
    IntegerMatrix lhs = a * xs;
    IntegerMatrix rhs = b * den;
    if (lhs == rhs) return x;
  }
  throw SpanMismatch("solve_right: no exact solution found");
}

RationalMatrix solve_left(const IntegerMatrix& a, const IntegerMatrix& b) {
  RationalMatrix xt = solve_right(a.transpose(), b.transpose());
  RationalMatrix x(xt.cols(), xt.rows());
  for (long i = 0; i < xt.rows(); ++i)
    for (long j = 0; j < xt.cols(); ++j) x(j, i) = xt(i, j);
  return x;
}

RationalMatrix solve_left(const IntegerMatrix& a, const RationalMatrix& b) {
  Int den = b.denominator();
  RationalMatrix x = solve_left(a, b.scaled(den));
  RationalMatrix out(x.rows(), x.cols());
  Rational d(den);
  for (long i = 0; i < x.rows(); ++i)
    for (long j = 0; j < x.cols(); ++j) out(i, j) = x(i, j) / d;
  return out;
}

// --- IntegerLattice -----------------------------------------------------------

IntegerLattice::IntegerLattice(long ambient, IntegerMatrix generating_rows) : ambient_(ambient) {
  if (generating_rows.rows() > 0 && generating_rows.cols() != ambient)
    throw AmbientMismatch("lattice generators vs ambient rank");
  basis_ = hnf_rows(generating_rows.rows() > 0 ? generating_rows : IntegerMatrix(0, ambient));
  if (basis_.rows() == 0) basis_ = IntegerMatrix(0, ambient);
}

namespace {

// Reduces v against an HNF basis; quotients are rational unless
// require_integral is set, in which case failure to divide aborts.
template <typename Vec>
bool reduce_against_hnf(const IntegerMatrix& basis, Vec& v, bool require_integral) {
  for (long i = 0; i < basis.rows(); ++i) {
    long c = first_nonzero(basis.row(i));
    if (c < 0) continue;
    if (v[c] == 0) continue;
    if constexpr (std::is_same_v<typename Vec::value_type, Int>) {
      if (!mpz_divisible_p(v[c].get_mpz_t(), basis(i, c).get_mpz_t())) return false;
      Int q = v[c] / basis(i, c);
      for (long j = 0; j < basis.cols(); ++j)
        if (basis(i, j) != 0) v[j] -= q * basis(i, j);
    } else {
      Rational q = v[c] / Rational(basis(i, c));
      if (require_integral && !is_integer(q)) return false;
      for (long j = 0; j < basis.cols(); ++j)
        if (basis(i, j) != 0) v[j] -= q * Rational(basis(i, j));
    }
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

bool IntegerLattice::contains(const std::vector<Int>& v) const {
  assert(static_cast<long>(v.size()) == ambient_);
  std::vector<Int> w = v;
  return reduce_against_hnf(basis_, w, true);
}

bool IntegerLattice::contains(const std::vector<Rational>& v) const {
  assert(static_cast<long>(v.size()) == ambient_);
  std::vector<Rational> w = v;
  return reduce_against_hnf(basis_, w, true);
}

bool IntegerLattice::contains(const IntegerLattice& sub) const {
  if (sub.ambient_rank() != ambient_) throw AmbientMismatch("containment");
  for (long i = 0; i < sub.basis_.rows(); ++i)
    if (!contains(sub.basis_.row(i))) return false;
  return true;
}

std::optional<std::vector<Int>> IntegerLattice::coordinates(const std::vector<Int>& v) const {
  std::vector<Int> w = v, coords(basis_.rows(), Int(0));
  for (long i = 0; i < basis_.rows(); ++i) {
    long c = first_nonzero(basis_.row(i));
    if (c < 0 || w[c] == 0) continue;
    if (!mpz_divisible_p(w[c].get_mpz_t(), basis_(i, c).get_mpz_t())) return std::nullopt;
    coords[i] = w[c] / basis_(i, c);
    for (long j = 0; j < basis_.cols(); ++j)
      if (basis_(i, j) != 0) w[j] -= coords[i] * basis_(i, j);
  }
  for (const auto& x : w)
    if (x != 0) return std::nullopt;
  return coords;
}

IntegerLattice saturate(const IntegerLattice& l) {
  const long k = l.rank(), n = l.ambient_rank();
  if (k == 0) return l;
  // Saturation as a double kernel: x lies in the Q-span of B iff x kills the
  // right kernel of B, and kernels of integer maps are saturated.
  IntegerMatrix c = left_kernel(l.basis().transpose());  // rows v with B v^T = 0
  if (c.rows() == 0) return IntegerLattice::standard(n);
  return IntegerLattice(n, left_kernel(c.transpose()));
}

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch("lattice_sum");
  return IntegerLattice(a.ambient_rank(), a.basis().vstack(b.basis()));
}

IntegerLattice lattice_intersect(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw AmbientMismatch("lattice_intersect");
  const long k1 = a.rank(), k2 = b.rank(), n = a.ambient_rank();
  if (k1 == 0 || k2 == 0) return IntegerLattice::zero(n);
  IntegerMatrix stacked = a.basis().vstack(b.basis() * Int(-1));
  IntegerMatrix ker = left_kernel(stacked);  // rows (u, v): u*B1 = v*B2
  IntegerMatrix gens(ker.rows(), n);
  for (long i = 0; i < ker.rows(); ++i)
    for (long j = 0; j < n; ++j) {
      Int s = 0;
      for (long t = 0; t < k1; ++t)
        if (ker(i, t) != 0) s += ker(i, t) * a.basis()(t, j);
      gens(i, j) = s;
    }
  return IntegerLattice(n, gens);
}

Rational generalized_index(const IntegerLattice& l1, const IntegerLattice& l2) {
  if (l1.ambient_rank() != l2.ambient_rank()) throw AmbientMismatch("generalized_index");
  if (l1.rank() != l2.rank()) throw SpanMismatch("generalized_index: ranks differ");
  if (l1.rank() == 0) return Rational(1);
  RationalMatrix t = solve_left(l1.basis(), l2.basis());  // T * B1 = B2
  Rational det = determinant(t);
  return det < 0 ? Rational(-det) : det;
}

std::vector<Int> quotient_invariants(const IntegerLattice& l_big, const IntegerLattice& l_small) {
  if (l_big.ambient_rank() != l_small.ambient_rank()) throw AmbientMismatch("quotient_invariants");
  const long kb = l_big.rank(), ks = l_small.rank();
  IntegerMatrix x(ks, kb);
  for (long i = 0; i < ks; ++i) {
    auto coords = l_big.coordinates(l_small.basis().row(i));
    if (!coords) throw NotASublattice("quotient_invariants");
    x.set_row(i, *coords);
  }
  if (ks < kb) throw InfiniteQuotient("quotient_invariants: rank drop");
  std::vector<Int> inv = invariant_factors(x);
  std::vector<Int> out;
  for (const auto& d : inv)
    if (d > 1) out.push_back(d);
  return out;
}

IntegerMatrix quotient_map(const IntegerLattice& w) {
  const long k = w.rank(), n = w.ambient_rank();
  if (saturate(w) != w) throw NotASublattice("quotient_map: sublattice not saturated");
  if (k == 0) return IntegerMatrix::identity(n);
  // x -> x * C^T has kernel exactly w and image all of Z^(n-k) because the
  // rows of C form a saturated lattice.
  IntegerMatrix c = left_kernel(w.basis().transpose());
  assert(c.rows() == n - k);
  return c.transpose();
}

// --- RationalLattice ----------------------------------------------------------

RationalLattice::RationalLattice(IntegerLattice lat, Int den) : lat_(std::move(lat)), den_(std::move(den)) {
  assert(den_ > 0);
  normalize();
}

RationalLattice::RationalLattice(long ambient, const std::vector<std::vector<Rational>>& rows) {
  Int den = 1;
  for (const auto& r : rows)
    for (const auto& q : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
  IntegerMatrix m(static_cast<long>(rows.size()), ambient);
  for (size_t i = 0; i < rows.size(); ++i) {
    assert(static_cast<long>(rows[i].size()) == ambient);
    for (long j = 0; j < ambient; ++j) {
      Rational q = rows[i][j] * Rational(den);
      m(static_cast<long>(i), j) = q.get_num();
    }
  }
  lat_ = IntegerLattice(ambient, m);
  den_ = den;
  normalize();
}

void RationalLattice::normalize() {
  if (lat_.rank() == 0) {
    den_ = 1;
    return;
  }
  Int g = den_;
  const IntegerMatrix& b = lat_.basis();
  for (long i = 0; i < b.rows() && g != 1; ++i)
    for (long j = 0; j < b.cols() && g != 1; ++j)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), b(i, j).get_mpz_t());
  if (g > 1) {
    IntegerMatrix nb(b.rows(), b.cols());
    for (long i = 0; i < b.rows(); ++i)
      for (long j = 0; j < b.cols(); ++j) nb(i, j) = b(i, j) / g;
    lat_ = IntegerLattice(lat_.ambient_rank(), nb);
    den_ /= g;
  }
}

bool RationalLattice::contains(const std::vector<Rational>& v) const {
  std::vector<Rational> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] * Rational(den_);
  return lat_.contains(w);
}

bool RationalLattice::contains(const RationalLattice& sub) const {
  Int m;
  mpz_lcm(m.get_mpz_t(), den_.get_mpz_t(), sub.den_.get_mpz_t());
  Int sa = m / den_, sb = m / sub.den_;
  IntegerLattice la(lat_.ambient_rank(), lat_.basis() * sa);
  IntegerLattice lb(sub.lat_.ambient_rank(), sub.lat_.basis() * sb);
  return la.contains(lb);
}

std::vector<std::vector<Rational>> RationalLattice::basis_rows() const {
  std::vector<std::vector<Rational>> out;
  for (long i = 0; i < lat_.rank(); ++i) {
    std::vector<Rational> row(lat_.ambient_rank());
    for (long j = 0; j < lat_.ambient_rank(); ++j)
      row[j] = make_rational(lat_.basis()(i, j), den_);
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

std::pair<IntegerLattice, IntegerLattice> common_scale(const RationalLattice& a, const RationalLattice& b,
                                                        Int* den_out = nullptr) {
  Int m;
  mpz_lcm(m.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
  Int sa = m / a.denominator(), sb = m / b.denominator();
  if (den_out) *den_out = m;
  return {IntegerLattice(a.ambient_rank(), a.scaled_lattice().basis() * sa),
          IntegerLattice(b.ambient_rank(), b.scaled_lattice().basis() * sb)};
}

}  // namespace

RationalLattice lattice_sum(const RationalLattice& a, const RationalLattice& b) {
  Int den;
  auto [la, lb] = common_scale(a, b, &den);
  return RationalLattice(lattice_sum(la, lb), den);
}

RationalLattice lattice_intersect(const RationalLattice& a, const RationalLattice& b) {
  Int den;
  auto [la, lb] = common_scale(a, b, &den);
  return RationalLattice(lattice_intersect(la, lb), den);
}

Rational generalized_index(const RationalLattice& l1, const RationalLattice& l2) {
  auto [la, lb] = common_scale(l1, l2);
  return generalized_index(la, lb);
}

std::vector<Int> quotient_invariants(const RationalLattice& l_big, const RationalLattice& l_small) {
  auto [la, lb] = common_scale(l_big, l_small);
  return quotient_invariants(la, lb);
}

}  // namespace modvis
