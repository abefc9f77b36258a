#include "modvis/winding.hpp"

#include <algorithm>

#include "modvis/congruence.hpp"
#include "modvis/errors.hpp"
#include "modvis/hecke.hpp"

namespace modvis {

namespace {

using Poly = std::vector<Rational>;  // coefficients, low degree first

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void poly_trim(Poly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

// a = q * b + r
std::pair<Poly, Poly> poly_divrem(Poly a, const Poly& b) {
  Poly q(std::max<size_t>(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, 1), Rational(0));
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
    size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    if (c == 0) break;
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    poly_trim(a);
    if (a.size() < b.size()) break;
  }
  poly_trim(q);
  poly_trim(a);
  return {q, a};
}

// u*a + v*b = gcd (monic)
void poly_gcdext(const Poly& a, const Poly& b, Poly& u, Poly& v) {
  Poly r0 = a, r1 = b;
  Poly s0{Rational(1)}, s1{Rational(0)};
  Poly t0{Rational(0)}, t1{Rational(1)};
  while (!(r1.size() == 1 && r1[0] == 0)) {
    auto [q, r] = poly_divrem(r0, r1);
    Poly s2 = s0, t2 = t0;
    Poly qs = poly_mul(q, s1), qt = poly_mul(q, t1);
    s2.resize(std::max(s2.size(), qs.size()), Rational(0));
    for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    t2.resize(std::max(t2.size(), qt.size()), Rational(0));
    for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
    poly_trim(s2);
    poly_trim(t2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Rational lead = r0.back();
  u = s0;
  v = t0;
  for (auto& c : u) c /= lead;
  for (auto& c : v) c /= lead;
}

std::vector<Rational> mat_apply(const IntegerMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.rows(), Rational(0));
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) out[i] += Rational(m(i, j)) * v[j];
  return out;
}

// p(T) v by Horner evaluation.
std::vector<Rational> poly_apply(const Poly& p, const IntegerMatrix& t,
                                 const std::vector<Rational>& v) {
  std::vector<Rational> acc(v.size(), Rational(0));
  for (size_t k = p.size(); k-- > 0;) {
    acc = mat_apply(t, acc);
    for (size_t i = 0; i < v.size(); ++i)
      if (p[k] != 0) acc[i] += p[k] * v[i];
  }
  return acc;
}

}  // namespace

std::vector<Rational> winding_coordinates(const ModSymSpace& space) {
  if (space.genus() == 0) throw GenusZero("winding element needs genus >= 1");
  const long dim = space.dim_v;

  long ell0 = 2;
  while (space.level % ell0 == 0) {
    ++ell0;
    while (!is_prime(ell0)) ++ell0;
  }
  IntegerMatrix t = hecke_matrix_y(space, ell0);

  // class of {0, oo}: the Manin symbol (0 : 1)
  std::vector<Int> w_int = space.symbol_y(space.p1.index(0, 1));
  std::vector<Rational> w(dim);
  for (long i = 0; i < dim; ++i) w[i] = Rational(w_int[i]);

  // Krylov chain: detect the first linear dependence to get the minimal
  // polynomial of t on w.
  std::vector<std::vector<Rational>> echelon;   // reduced rows
  std::vector<std::vector<Rational>> combos;    // same combos over Krylov coeffs
  std::vector<long> pivots;
  Poly minpoly;
  std::vector<Rational> cur = w;
  for (long step = 0;; ++step) {
    std::vector<Rational> row = cur;
    std::vector<Rational> combo(step + 1, Rational(0));
    combo[step] = 1;
    for (size_t i = 0; i < echelon.size(); ++i) {
      if (row[pivots[i]] == 0) continue;
      Rational c = row[pivots[i]];
      for (long j = 0; j < dim; ++j)
        if (echelon[i][j] != 0) row[j] -= c * echelon[i][j];
      combo.resize(std::max(combo.size(), combos[i].size() + 0), Rational(0));
      for (size_t j = 0; j < combos[i].size(); ++j) combo[j] -= c * combos[i][j];
    }
    long piv = -1;
    for (long j = 0; j < dim; ++j)
      if (row[j] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) {
      // combo encodes sum combo_k t^k w = 0 with combo[step] = 1
      minpoly = Poly(combo.begin(), combo.end());
      poly_trim(minpoly);
      break;
    }
    Rational lead = row[piv];
    for (long j = 0; j < dim; ++j) row[j] /= lead;
    for (auto& c : combo) c /= lead;
    echelon.push_back(std::move(row));
    combos.push_back(std::move(combo));
    pivots.push_back(piv);
    cur = mat_apply(t, cur);
  }

  // strip the Eisenstein eigenvalue ell0 + 1
  const Rational lambda(ell0 + 1);
  Poly lin{-lambda, Rational(1)};
  long j_mult = 0;
  Poly ms = minpoly;
  for (;;) {
    auto [q, r] = poly_divrem(ms, lin);
    if (r.size() == 1 && r[0] == 0) {
      ms = q;
      ++j_mult;
    } else {
      break;
    }
  }

  std::vector<Rational> e_y;
  if (j_mult == 0) {
    e_y = w;  // no boundary component
  } else {
    Poly linpow{Rational(1)};
    for (long i = 0; i < j_mult; ++i) linpow = poly_mul(linpow, lin);
    Poly u, v;
    poly_gcdext(linpow, ms, u, v);  // u*linpow + v*ms = 1
    std::vector<Rational> cut = poly_apply(linpow, t, w);
    e_y = poly_apply(u, t, cut);
  }

  std::vector<Rational> e_z = space.y_to_z(e_y);  // throws if not cuspidal

  // star-fixedness is forced; check it to pin the conventions
  std::vector<Rational> se(space.cuspidal_rank(), Rational(0));
  for (long i = 0; i < space.star_z.rows(); ++i)
    for (long j = 0; j < space.star_z.cols(); ++j)
      if (space.star_z(i, j) != 0 && e_z[j] != 0) se[i] += Rational(space.star_z(i, j)) * e_z[j];
  if (se != e_z) throw EngineError("winding element is not star-fixed");
  return e_z;
}

const std::vector<Rational>& ModSymSpace::winding_e() const {
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (!winding_cache) winding_cache = winding_coordinates(*this);
  return *winding_cache;
}

WindingData winding_data(const std::shared_ptr<ModSymSpace>& space_ptr) {
  const ModSymSpace& s = *space_ptr;
  if (s.genus() == 0) throw GenusZero("winding data needs genus >= 1");
  WindingData wd;
  wd.e = s.winding_e();

  Int order = 1;
  for (const auto& q : wd.e) mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), q.get_den().get_mpz_t());
  wd.cuspidal_order = order;

  // T_n e in y-coordinates via the recursion that strips the smallest prime
  // factor: T_{p n} = T_p T_n, minus p T_{n/p} when p | n and p is good.
  // Processing primes largest-first makes every dependency available and lets
  // the applications batch per (prime, depth).
  std::vector<Rational> e_y = s.z_to_y(wd.e);
  long base = std::max<long>(sturm_bound(s.level), 30);
  auto span_up_to = [&](long b) {
    std::vector<std::vector<Rational>> tne(b + 1);
    tne[1] = e_y;
    std::vector<long> spf(b + 1, 0);
    for (long p = 2; p <= b; ++p)
      if (spf[p] == 0)
        for (long k = p; k <= b; k += p)
          if (spf[k] == 0) spf[k] = p;
    std::vector<long> primes;
    for (long p = 2; p <= b; ++p)
      if (spf[p] == p) primes.push_back(p);
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
      long p = *it;
      for (long depth = 1;; ++depth) {
        std::vector<long> batch;  // n = p^depth * m with spf(m) > p
        long pk = 1;
        for (long i = 0; i < depth; ++i) pk *= p;
        if (pk > b) break;
        for (long m = 1; pk * m <= b; ++m) {
          if (m > 1 && spf[m] <= p) continue;
          batch.push_back(pk * m);
        }
        if (batch.empty()) break;
        std::vector<std::vector<Rational>> in;
        in.reserve(batch.size());
        for (long nn : batch) in.push_back(tne[nn / p]);
        auto imgs = hecke_apply_y(s, p, in);
        for (size_t i = 0; i < batch.size(); ++i) {
          long nn = batch[i];
          tne[nn] = std::move(imgs[i]);
          if (depth >= 2 && s.level % p != 0) {
            const auto& lower = tne[nn / p / p];
            for (long c = 0; c < s.dim_v; ++c) tne[nn][c] -= Rational(p) * lower[c];
          }
        }
      }
    }
    std::vector<std::vector<Rational>> rows;
    for (long nn = 1; nn <= b; ++nn) {
      if (tne[nn].empty()) continue;
      rows.push_back(s.y_to_z(tne[nn]));
    }
    return RationalLattice(s.cuspidal_rank(), rows);
  };

  RationalLattice cur = span_up_to(base);
  long bound = base;
  for (int round = 0; round < 4; ++round) {
    RationalLattice next = span_up_to(2 * bound);
    if (next == cur) break;
    cur = next;
    bound *= 2;
    if (round == 3) throw BoundExceeded("winding lattice did not stabilize");
  }
  wd.te_lattice = cur;
  wd.generation_bound = bound;
  wd.ie_lattice = lattice_intersect(cur, RationalLattice(IntegerLattice::standard(s.cuspidal_rank())));
  return wd;
}

Rational lratio(const ModSymSpace& space, const RationalNewform& f, const WindingData& wd) {
  HomologicalE he = homological_e(space, f);
  std::vector<std::vector<Rational>> img_rows;
  for (const auto& row : wd.te_lattice.basis_rows()) {
    std::vector<Rational> img(2, Rational(0));
    for (long i = 0; i < he.quotient.rows(); ++i)
      for (long j = 0; j < 2; ++j)
        if (he.quotient(i, j) != 0 && row[i] != 0) img[j] += row[i] * Rational(he.quotient(i, j));
    img_rows.push_back(std::move(img));
  }
  RationalLattice pi_te(2, img_rows);
  if (pi_te.rank() == 0) return Rational(0);
  return generalized_index(RationalLattice(he.h1e_plus), pi_te);
}

Int cuspidal_image_order(const ModSymSpace& space, const RationalNewform& f,
                         const WindingData& wd) {
  if (!f.rank_zero) throw RankNotZero("cuspidal_image_order needs analytic rank zero");
  HomologicalE he = homological_e(space, f);
  auto project = [&](const RationalLattice& l) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : l.basis_rows()) {
      std::vector<Rational> img(2, Rational(0));
      for (long i = 0; i < he.quotient.rows(); ++i)
        for (long j = 0; j < 2; ++j)
          if (he.quotient(i, j) != 0 && row[i] != 0) img[j] += row[i] * Rational(he.quotient(i, j));
      rows.push_back(std::move(img));
    }
    return RationalLattice(2, rows);
  };
  RationalLattice pi_te = project(wd.te_lattice);
  RationalLattice pi_ie = project(wd.ie_lattice);
  Int order = 1;
  for (const auto& d : quotient_invariants(pi_te, pi_ie)) order *= d;
  return order;
}

LRatioReport lratio_report(const ModSymSpace& space, const RationalNewform& f,
                           const WindingData& wd) {
  LRatioReport rep;
  rep.level = space.level;
  rep.form_index = f.index;
  rep.lratio = lratio(space, f, wd);
  rep.projection_zero = (rep.lratio == 0);
  if (f.rank_zero) rep.cuspidal_image_order = cuspidal_image_order(space, f, wd);
  return rep;
}

}  // namespace modvis
