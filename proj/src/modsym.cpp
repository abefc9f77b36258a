#include "modvis/modsym.hpp"

#include <algorithm>
#include <numeric>

#include "modvis/errors.hpp"
#include "modvis/hecke.hpp"

namespace modvis {

namespace {

long mod_pos(long a, long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

// sigma = [0,-1;1,0], tau = [0,-1;1,-1] act on the right of (c:d).
std::pair<long, long> act_sigma(long n, long c, long d) { return {mod_pos(d, n), mod_pos(-c, n)}; }
std::pair<long, long> act_tau(long n, long c, long d) { return {mod_pos(d, n), mod_pos(-c - d, n)}; }

using QRow = std::vector<std::pair<long, Rational>>;

QRow row_axpy(const QRow& a, const QRow& b, const Rational& coef) {
  // a + coef * b, sorted merge
  QRow out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Rational v = coef * b[j].second;
      if (v != 0) out.emplace_back(b[j].first, v);
      ++j;
    } else {
      Rational v = a[i].second + coef * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// Incremental sparse echelon form over Q with back-substitution at the end.
struct SparseElim {
  std::map<long, QRow> pivot_rows;  // leading col -> row, leading coeff 1

  void insert(QRow row) {
    for (;;) {
      if (row.empty()) return;
      long lead = row.front().first;
      auto it = pivot_rows.find(lead);
      if (it == pivot_rows.end()) {
        Rational c = row.front().second;
        if (c != 1)
          for (auto& e : row) e.second /= c;
        pivot_rows.emplace(lead, std::move(row));
        return;
      }
      row = row_axpy(row, it->second, -row.front().second);
    }
  }

  // Expression of each pivot column over the free columns.
  std::map<long, QRow> back_substitute() const {
    std::map<long, QRow> expr;
    for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
      QRow e;
      for (size_t t = 1; t < it->second.size(); ++t) {
        const auto& [col, q] = it->second[t];
        auto pit = expr.find(col);
        if (pit == expr.end()) {
          e = row_axpy(e, QRow{{col, Rational(1)}}, -q);
        } else {
          e = row_axpy(e, pit->second, -q);
        }
      }
      expr.emplace(it->first, std::move(e));
    }
    return expr;
  }
};

// SL2(Z) lift of the class (c:d): returns [a, b; c', d'] with
// (c', d') = (c, d) mod N and a d' - b c' = 1.
std::array<long, 4> lift_to_sl2(long n, long c, long d) {
  c = mod_pos(c, n);
  d = mod_pos(d, n);
  long dd = d;
  while (std::gcd(c, dd) != 1) dd += n;
  // x*c + y*dd = 1
  long x = 0, y = 0;
  {
    long r0 = c, r1 = dd, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      long q = r0 / r1;
      long tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
      tmp = t0 - q * t1;
      t0 = t1;
      t1 = tmp;
    }
    x = s0;
    y = t0;
  }
  return {y, -x, c, dd};  // det = y*dd + x*c = 1
}

}  // namespace

Cusp cusp_reduce(long num, long den) {
  if (den == 0) return Cusp{1, 0};
  long g = std::gcd(std::abs(num), std::abs(den));
  if (g != 0) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Cusp{num, den};
}

bool cusps_equivalent(long level, const Cusp& a, const Cusp& b) {
  // p1/q1 ~ p2/q2 under Gamma_0(N) iff s1 q2 = s2 q1 mod gcd(q1 q2, N),
  // where p_i s_i = 1 mod q_i.
  long q1 = a.den, q2 = b.den;
  auto inv_or_zero = [](long p, long q) -> long {
    if (q == 0) return 1;  // cusp infinity, normalized to 1/0
    if (q == 1) return 0;
    long r0 = q, r1 = mod_pos(p, q), t0 = 0, t1 = 1;
    while (r1 != 0) {
      long qq = r0 / r1;
      long tmp = r0 - qq * r1;
      r0 = r1;
      r1 = tmp;
      tmp = t0 - qq * t1;
      t0 = t1;
      t1 = tmp;
    }
    return mod_pos(t0, q);
  };
  long s1 = inv_or_zero(a.num, q1);
  long s2 = inv_or_zero(b.num, q2);
  long long m = std::gcd(static_cast<long long>(q1) * q2, static_cast<long long>(level));
  if (m == 0) m = level;
  long long lhs = (static_cast<long long>(s1) * q2 - static_cast<long long>(s2) * q1) % m;
  return lhs == 0;
}

std::vector<Int> ModSymSpace::symbol_y(long symbol_index) const {
  std::vector<Int> r(dim_v, Int(0));
  for (const auto& [col, val] : sym_v[symbol_index]) r[col] = val;
  return solve_ht(r);
}

std::vector<Int> ModSymSpace::solve_ht(const std::vector<Int>& r) const {
  // H is upper triangular, so H^T is lower triangular: forward substitution.
  const long d = dim_v;
  std::vector<Int> t(d);
  for (long j = 0; j < d; ++j) {
    Int acc = r[j];
    for (long i = 0; i < j; ++i)
      if (h(i, j) != 0 && t[i] != 0) acc -= h(i, j) * t[i];
    Int q;
    mpz_fdiv_qr(q.get_mpz_t(), acc.get_mpz_t(), acc.get_mpz_t(), h(j, j).get_mpz_t());
    t[j] = q;
    if (acc != 0) throw EngineError("solve_ht: inexact division");
  }
  return t;
}

std::vector<Rational> ModSymSpace::y_to_z(const std::vector<Rational>& y) const {
  // k_basis is an HNF basis: read coordinates off the pivots.
  std::vector<Rational> w = y;
  const long k = cuspidal_rank();
  std::vector<Rational> z(k);
  for (long i = 0; i < k; ++i) {
    long c = k_pivots[i];
    z[i] = w[c] / Rational(k_basis(i, c));
    if (z[i] != 0)
      for (long j = c; j < dim_v; ++j)
        if (k_basis(i, j) != 0) w[j] -= z[i] * Rational(k_basis(i, j));
  }
  for (const auto& q : w)
    if (q != 0) throw EngineError("y_to_z: vector outside the cuspidal span");
  return z;
}

std::vector<Rational> ModSymSpace::z_to_y(const std::vector<Rational>& z) const {
  std::vector<Rational> y(dim_v, Rational(0));
  for (long i = 0; i < cuspidal_rank(); ++i)
    for (long j = 0; j < dim_v; ++j)
      if (k_basis(i, j) != 0 && z[i] != 0) y[j] += z[i] * Rational(k_basis(i, j));
  return y;
}

std::shared_ptr<ModSymSpace> build_space(long n, long max_p1_size) {
  if (n < 1) throw ConfigError("level must be positive");
  if (pone_size(n) > max_p1_size)
    throw LevelTooLarge("level " + std::to_string(n) + ": P1 size " + std::to_string(pone_size(n)) +
                        " exceeds budget " + std::to_string(max_p1_size));

  auto sp = std::make_shared<ModSymSpace>();
  ModSymSpace& s = *sp;
  s.level = n;
  s.p1 = P1Table::build(n);
  const long m = s.p1.size();

  // Two- and three-term relations.
  SparseElim elim;
  std::vector<bool> seen(m, false);
  for (long i = 0; i < m; ++i) {
    auto [c, d] = s.p1.reps()[i];
    auto [sc, sd] = act_sigma(n, c, d);
    long j = s.p1.index(sc, sd);
    if (seen[std::min(i, j)] && i != j) continue;
    QRow row;
    if (i == j) {
      row = {{i, Rational(2)}};
    } else {
      row = {{std::min(i, j), Rational(1)}, {std::max(i, j), Rational(1)}};
    }
    seen[std::min(i, j)] = true;
    elim.insert(std::move(row));
  }
  std::fill(seen.begin(), seen.end(), false);
  for (long i = 0; i < m; ++i) {
    if (seen[i]) continue;
    auto [c, d] = s.p1.reps()[i];
    auto [tc, td] = act_tau(n, c, d);
    long j = s.p1.index(tc, td);
    auto [tc2, td2] = act_tau(n, tc, td);
    long k = s.p1.index(tc2, td2);
    seen[i] = seen[j] = seen[k] = true;
    std::map<long, long> mult;
    mult[i]++;
    mult[j]++;
    mult[k]++;
    QRow row;
    for (const auto& [col, cnt] : mult) row.emplace_back(col, Rational(cnt));
    elim.insert(std::move(row));
  }

  auto expr = elim.back_substitute();

  // Free columns become the basis of the relation quotient V.
  std::vector<long> col_to_v(m, -1);
  for (long i = 0; i < m; ++i) {
    if (elim.pivot_rows.count(i)) continue;
    col_to_v[i] = static_cast<long>(s.free_gen.size());
    s.free_gen.push_back(i);
  }
  s.dim_v = static_cast<long>(s.free_gen.size());
  const long dim = s.dim_v;

  // Symbol images over the free columns, with a global denominator.
  std::vector<QRow> sym_q(m);
  Int delta = 1;
  for (long i = 0; i < m; ++i) {
    auto it = expr.find(i);
    if (it == expr.end()) {
      sym_q[i] = {{i, Rational(1)}};
    } else {
      sym_q[i] = it->second;
    }
    for (const auto& [col, q] : sym_q[i])
      mpz_lcm(delta.get_mpz_t(), delta.get_mpz_t(), q.get_den().get_mpz_t());
  }
  s.delta = delta;
  s.sym_v.resize(m);
  for (long i = 0; i < m; ++i) {
    for (const auto& [col, q] : sym_q[i]) {
      Rational v = q * Rational(delta);
      s.sym_v[i].emplace_back(col_to_v[col], Int(v.get_num()));
    }
    std::sort(s.sym_v[i].begin(), s.sym_v[i].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  // Lattice spanned by all Manin symbols (y-basis).
  {
    IntegerMatrix gens(m, dim);
    for (long i = 0; i < m; ++i)
      for (const auto& [col, val] : s.sym_v[i]) gens(i, col) = val;
    s.h = hnf_rows(gens);
    if (s.h.rows() != dim) throw EngineError("Manin symbol lattice is not full rank");
  }

  // Boundary map on generators and cusp classes.
  std::vector<std::vector<std::pair<long, long>>> gen_boundary(dim);  // (cusp idx, +-1)
  auto cusp_index = [&](const Cusp& c) -> long {
    for (size_t i = 0; i < s.cusps.size(); ++i)
      if (cusps_equivalent(n, s.cusps[i], c)) return static_cast<long>(i);
    s.cusps.push_back(c);
    return static_cast<long>(s.cusps.size()) - 1;
  };
  for (long j = 0; j < dim; ++j) {
    auto [c, d] = s.p1.reps()[s.free_gen[j]];
    auto g = lift_to_sl2(n, c, d);
    long ia = cusp_index(cusp_reduce(g[0], g[2]));  // a/c
    long ib = cusp_index(cusp_reduce(g[1], g[3]));  // b/d
    if (ia != ib) {
      gen_boundary[j].emplace_back(ia, 1);
      gen_boundary[j].emplace_back(ib, -1);
    }
  }
  if (s.cusps.empty()) s.cusps.push_back(Cusp{1, 0});  // genus-0 degenerate quotient
  const long nc = static_cast<long>(s.cusps.size());
  s.boundary_y = RationalMatrix(nc, dim);
  Rational inv_delta = make_rational(1, delta);
  for (long k = 0; k < dim; ++k)
    for (long j = 0; j < dim; ++j) {
      if (s.h(k, j) == 0) continue;
      for (const auto& [ci, sign] : gen_boundary[j])
        s.boundary_y(ci, k) += Rational(sign) * Rational(s.h(k, j)) * inv_delta;
    }

  // Integral cuspidal homology: integer kernel of the boundary in y-coords.
  {
    Int bden = s.boundary_y.denominator();
    IntegerMatrix bi = s.boundary_y.scaled(bden);  // nc x dim
    s.k_basis = left_kernel(bi.transpose());       // rows y with bi * y^T = 0
    for (long i = 0; i < s.k_basis.rows(); ++i)
      for (long j = 0; j < dim; ++j)
        if (s.k_basis(i, j) != 0) {
          s.k_pivots.push_back(j);
          break;
        }
  }

  // Star involution.
  s.star_y = star_matrix_y(s);
  if (s.cuspidal_rank() > 0) {
    RationalMatrix sz = solve_right(s.k_basis.transpose(), s.star_y * s.k_basis.transpose());
    Int den = sz.denominator();
    if (den != 1) throw EngineError("star does not preserve the integral lattice");
    s.star_z = sz.scaled(1);
  } else {
    s.star_z = IntegerMatrix(0, 0);
  }
  return sp;
}

IntegerMatrix star_involution(const ModSymSpace& space) { return space.star_z; }

IntegerLattice plus_lattice(const IntegerLattice& l, const ModSymSpace& space) {
  const IntegerMatrix& st = space.star_z;
  if (l.ambient_rank() != st.rows()) throw AmbientMismatch("plus_lattice");
  // star acts on row vectors by x -> x * S^T
  IntegerMatrix stt = st.transpose();
  IntegerMatrix image = l.basis() * stt;
  for (long i = 0; i < image.rows(); ++i)
    if (!l.contains(image.row(i))) throw NotStarStable("plus_lattice: lattice not star-stable");
  IntegerMatrix diff = image - l.basis();  // rows: b_i (S^T - I)
  IntegerMatrix ker = left_kernel(diff);   // combos fixed by star
  return IntegerLattice(l.ambient_rank(), ker * l.basis());
}

RationalLattice plus_lattice(const RationalLattice& l, const ModSymSpace& space) {
  IntegerLattice fixed = plus_lattice(l.scaled_lattice(), space);
  return RationalLattice(fixed, l.denominator());
}

IntegerMatrix ModSymSpace::hecke_z(long n) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = hecke_cache.find(n);
    if (it != hecke_cache.end()) return it->second;
  }
  IntegerMatrix t = hecke_matrix(*this, n);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return hecke_cache.emplace(n, std::move(t)).first->second;
}

}  // namespace modvis
