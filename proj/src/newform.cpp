#include "modvis/newform.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "modvis/congruence.hpp"
#include "modvis/errors.hpp"
#include "modvis/hecke.hpp"
#include "modvis/modmat.hpp"

namespace modvis {

namespace {

std::vector<long> primes_up_to(long b) {
  std::vector<long> ps;
  for (long p = 2; p <= b; ++p) {
    bool ok = true;
    for (long q = 2; q * q <= p && ok; ++q)
      if (p % q == 0) ok = false;
    if (ok) ps.push_back(p);
  }
  return ps;
}

std::vector<Rational> z_row_to_y(const ModSymSpace& s, const std::vector<Int>& row) {
  std::vector<Rational> y(s.dim_v, Rational(0));
  for (long i = 0; i < s.cuspidal_rank(); ++i) {
    if (row[i] == 0) continue;
    for (long j = 0; j < s.dim_v; ++j)
      if (s.k_basis(i, j) != 0) y[j] += Rational(row[i] * s.k_basis(i, j));
  }
  return y;
}

// T_p on the coordinates of a saturated Hecke-stable lattice; row action.
IntegerMatrix restricted_hecke(const ModSymSpace& s, const IntegerLattice& l, long p) {
  const long k = l.rank();
  {
    std::lock_guard<std::mutex> lock(s.cache_mutex);
    auto it = s.hecke_cache.find(p);
    if (it != s.hecke_cache.end()) {
      IntegerMatrix img = l.basis() * it->second.transpose();
      IntegerMatrix m(k, k);
      for (long i = 0; i < k; ++i) {
        auto coords = l.coordinates(img.row(i));
        if (!coords) throw EngineError("restricted_hecke: lattice not stable");
        m.set_row(i, *coords);
      }
      return m;
    }
  }
  std::vector<std::vector<Rational>> ys(k);
  for (long i = 0; i < k; ++i) ys[i] = z_row_to_y(s, l.basis().row(i));
  auto imgs = hecke_apply_y(s, p, ys);
  IntegerMatrix m(k, k);
  for (long i = 0; i < k; ++i) {
    std::vector<Rational> z = s.y_to_z(imgs[i]);
    std::vector<Int> zi(z.size());
    for (size_t j = 0; j < z.size(); ++j) {
      if (!is_integer(z[j])) throw EngineError("restricted_hecke: non-integral image");
      zi[j] = z[j].get_num();
    }
    auto coords = l.coordinates(zi);
    if (!coords) throw EngineError("restricted_hecke: lattice not stable");
    m.set_row(i, *coords);
  }
  return m;
}

bool is_scalar(const IntegerMatrix& m, Int* value) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      if (i == j) continue;
      if (m(i, j) != 0) return false;
    }
  for (long i = 1; i < m.rows(); ++i)
    if (m(i, i) != m(0, 0)) return false;
  *value = m.rows() > 0 ? m(0, 0) : Int(0);
  return true;
}

// Nullity of m - theta*I over F_p for a quick dimension filter.
long nullity_modp(const IntegerMatrix& m, const Int& theta, uint64_t p) {
  modp::Mat a = modp::reduce(m, p);
  uint64_t t = modp::from_int(theta, p);
  for (size_t i = 0; i < a.size(); ++i) a[i][i] = modp::sub(a[i][i], t, p);
  return static_cast<long>(a.size()) - modp::rank(a, p);
}

constexpr uint64_t kFilterPrime = 2147483647ull;  // 2^31 - 1

struct DivisorCacheEntry {
  std::shared_ptr<ModSymSpace> space;
  std::vector<RationalNewform> forms;
};

std::recursive_mutex g_divisor_mutex;
std::map<long, DivisorCacheEntry> g_divisor_cache;

}  // namespace

std::vector<RationalNewform> rational_newforms(const std::shared_ptr<ModSymSpace>& space_ptr) {
  const ModSymSpace& s = *space_ptr;
  const long n = s.level;
  const long g2 = s.cuspidal_rank();
  if (g2 == 0) return {};
  const long bound = sturm_bound(n);
  const std::vector<long> primes = primes_up_to(bound);

  struct Node {
    IntegerLattice lat;
    size_t prime_idx;
    std::map<long, Int> eigen;
  };
  std::vector<Node> stack{{IntegerLattice::standard(g2), 0, {}}};
  std::vector<Node> candidates;

  while (!stack.empty()) {
    Node nd = std::move(stack.back());
    stack.pop_back();
    if (nd.lat.rank() < 2) continue;
    if (nd.prime_idx == primes.size()) {
      if (nd.lat.rank() == 2) candidates.push_back(std::move(nd));
      continue;
    }
    const long p = primes[nd.prime_idx];
    IntegerMatrix m = (nd.lat.rank() == g2) ? s.hecke_z(p).transpose()
                                            : restricted_hecke(s, nd.lat, p);
    if (nd.lat.rank() == 2) {
      Int theta;
      if (is_scalar(m, &theta)) {
        nd.eigen[p] = theta;
        nd.prime_idx += 1;
        stack.push_back(std::move(nd));
      }
      continue;
    }
    const long tb = static_cast<long>(std::floor(2.0 * std::sqrt(static_cast<double>(p))));
    for (long theta = -tb; theta <= tb; ++theta) {
      if (nullity_modp(m, Int(theta), kFilterPrime) < 2) continue;
      IntegerMatrix shifted = m;
      for (long i = 0; i < shifted.rows(); ++i) shifted(i, i) -= theta;
      IntegerMatrix ker = left_kernel(shifted);
      if (ker.rows() < 2) continue;
      Node child;
      child.lat = IntegerLattice(g2, ker * nd.lat.basis());
      child.prime_idx = nd.prime_idx + 1;
      child.eigen = nd.eigen;
      child.eigen[p] = theta;
      stack.push_back(std::move(child));
    }
  }

  // Newform constraints at bad primes, then the divisor-level old filter.
  std::vector<Node> kept;
  for (auto& c : candidates) {
    bool ok = true;
    for (long p : primes) {
      if (n % p != 0) continue;
      const Int& aq = c.eigen.at(p);
      if ((n / p) % p == 0) {
        if (aq != 0) ok = false;  // q^2 | N forces a_q = 0
      } else {
        if (aq != 1 && aq != -1) ok = false;  // q || N forces a_q = +-1
      }
    }
    if (!ok) continue;
    for (long m = 1; m < n && ok; ++m) {
      if (n % m != 0) continue;
      for (const auto& table : divisor_system_tables(m, bound)) {
        bool match = true;
        for (long p : primes) {
          if (n % p == 0) continue;
          auto it = table.find(p);
          if (it == table.end() || it->second != c.eigen.at(p)) {
            match = false;
            break;
          }
        }
        if (match) {
          ok = false;  // old system from a proper divisor level
          break;
        }
      }
    }
    if (ok) kept.push_back(std::move(c));
  }

  std::sort(kept.begin(), kept.end(), [&](const Node& a, const Node& b) {
    for (long p : primes) {
      if (a.eigen.at(p) != b.eigen.at(p)) return a.eigen.at(p) < b.eigen.at(p);
    }
    return false;
  });

  std::vector<RationalNewform> out;
  for (size_t i = 0; i < kept.size(); ++i) {
    RationalNewform f;
    f.level = n;
    f.index = static_cast<long>(i);
    f.eigen = kept[i].eigen;
    f.eigen_bound = bound;
    f.sub_lattice = kept[i].lat;
    for (long p : primes)
      if (n % p == 0 && (n / p) % p != 0)
        f.atkin_lehner[p] = static_cast<int>(-f.eigen.at(p).get_si());

    // separating operator: smallest single prime first, then seeded combos
    bool found = false;
    auto try_combo = [&](const std::vector<std::pair<long, Int>>& combo) {
      IntegerMatrix c(g2, g2);
      Int theta = 0;
      for (const auto& [p, w] : combo) {
        c = c + s.hecke_z(p) * w;
        theta += w * f.eigen.at(p);
      }
      if (nullity_modp(c, theta, kFilterPrime) != 2) return false;
      for (long i = 0; i < g2; ++i) c(i, i) -= theta;
      IntegerMatrix ker = left_kernel(c.transpose());
      if (ker.rows() != 2) return false;
      IntegerLattice kl(g2, ker);
      if (kl != f.sub_lattice) return false;
      f.combo = combo;
      f.combo_theta = theta;
      return true;
    };
    for (long p : primes) {
      if (try_combo({{p, Int(1)}})) {
        found = true;
        break;
      }
    }
    for (unsigned attempt = 0; !found && attempt < 60; ++attempt) {
      std::minstd_rand rng(static_cast<unsigned>(n) * 1009u + attempt + 1);
      std::vector<std::pair<long, Int>> combo;
      for (size_t t = 0; t < std::min<size_t>(6, primes.size()); ++t)
        combo.emplace_back(primes[t], Int(1 + static_cast<long>(rng() % 40)));
      found = try_combo(combo);
    }
    if (!found) throw EngineError("no separating Hecke operator found for " + f.label());
    out.push_back(std::move(f));
  }

  // analytic-rank bits from the winding element
  if (!out.empty()) {
    const std::vector<Rational>& e = space_ptr->winding_e();
    RationalMatrix ec(g2, 1);
    for (long i = 0; i < g2; ++i) ec(i, 0) = e[i];
    Int eden = ec.denominator();
    IntegerMatrix e_int = ec.scaled(eden);
    for (auto& f : out) {
      IntegerMatrix a = combo_matrix(s, f);
      for (long i = 0; i < g2; ++i) a(i, i) -= f.combo_theta;
      // independent columns of a mod p; rank must be 2g - 2
      modp::Mat am = modp::reduce(a, kFilterPrime);
      std::vector<long> pivots = modp::rref(am, kFilterPrime);
      if (static_cast<long>(pivots.size()) != g2 - 2)
        throw EngineError("separating operator rank defect mod filter prime");
      IntegerMatrix aj(g2, g2 - 2);
      for (long i = 0; i < g2; ++i)
        for (size_t j = 0; j < pivots.size(); ++j) aj(i, static_cast<long>(j)) = a(i, pivots[j]);
      try {
        solve_right(aj, e_int);
        f.rank_zero = false;  // e lies in the complement span: projection vanishes
      } catch (const SpanMismatch&) {
        f.rank_zero = true;
      }
    }
  }
  return out;
}

Int eigenvalue(const ModSymSpace& space, RationalNewform& f, long ell, long ell_budget) {
  if (ell == 1) return 1;  // normalization a_1 = 1
  auto it = f.eigen.find(ell);
  if (it != f.eigen.end()) return it->second;
  if (!is_prime(ell)) throw ConfigError("eigenvalue: index must be prime");
  if (ell > ell_budget) throw BoundExceeded("eigenvalue: prime exceeds budget");

  std::vector<std::vector<Rational>> ys(2);
  for (long i = 0; i < 2; ++i) ys[i] = z_row_to_y(space, f.sub_lattice.basis().row(i));
  auto imgs = hecke_apply_y(space, ell, ys);
  Rational a;
  bool have = false;
  for (long i = 0; i < 2; ++i) {
    for (long j = 0; j < space.dim_v; ++j) {
      if (ys[i][j] == 0) {
        if (imgs[i][j] != 0) throw EngineError("eigenvalue: vector is not an eigenvector");
        continue;
      }
      Rational ratio = imgs[i][j] / ys[i][j];
      if (!have) {
        a = ratio;
        have = true;
      } else if (ratio != a) {
        throw EngineError("eigenvalue: vector is not an eigenvector");
      }
    }
  }
  if (!have || !is_integer(a)) throw EngineError("eigenvalue: non-integral eigenvalue");
  Int av = a.get_num();
  if (space.level % ell != 0 && av * av > 4 * ell)
    throw EngineError("eigenvalue: Ramanujan bound violated");
  f.eigen[ell] = av;
  if (ell <= f.eigen_bound + 1) f.eigen_bound = std::max(f.eigen_bound, ell);
  return av;
}

IntegerMatrix combo_matrix(const ModSymSpace& space, const RationalNewform& f) {
  IntegerMatrix c(space.cuspidal_rank(), space.cuspidal_rank());
  for (const auto& [p, w] : f.combo) c = c + space.hecke_z(p) * w;
  return c;
}

IsotypicData isotypic_data(const ModSymSpace& space, const RationalNewform& f) {
  IsotypicData d;
  for (const auto& [p, w] : f.combo) d.generator_primes.push_back(p);
  d.kernel = f.sub_lattice;
  IntegerMatrix a = combo_matrix(space, f);
  for (long i = 0; i < a.rows(); ++i) a(i, i) -= f.combo_theta;
  d.image_span = saturate(IntegerLattice(space.cuspidal_rank(), a.transpose()));
  return d;
}

HomologicalE homological_e(const ModSymSpace& space, const RationalNewform& f) {
  HomologicalE he;
  IsotypicData iso = isotypic_data(space, f);
  he.quotient = quotient_map(iso.image_span);  // 2g x 2
  RationalMatrix se = solve_right(he.quotient, space.star_z.transpose() * he.quotient);
  if (se.denominator() != 1) throw EngineError("star does not descend integrally");
  IntegerMatrix set = se.scaled(1);  // row action on the quotient
  he.star = set.transpose();
  he.h1e = IntegerLattice::standard(2);
  IntegerMatrix diff = set - IntegerMatrix::identity(2);
  he.h1e_plus = IntegerLattice(2, left_kernel(diff));
  if (he.h1e_plus.rank() != 1) throw EngineError("plus part of H1(E) is not rank 1");
  return he;
}

std::vector<std::map<long, Int>> divisor_system_tables(long level, long bound) {
  std::lock_guard<std::recursive_mutex> lock(g_divisor_mutex);
  auto it = g_divisor_cache.find(level);
  if (it == g_divisor_cache.end()) {
    DivisorCacheEntry entry;
    entry.space = build_space(level);
    entry.forms = rational_newforms(entry.space);
    it = g_divisor_cache.emplace(level, std::move(entry)).first;
  }
  std::vector<std::map<long, Int>> tables;
  for (auto& f : it->second.forms) {
    for (long p : primes_up_to(bound)) eigenvalue(*it->second.space, f, p);
    tables.push_back(f.eigen);
  }
  return tables;
}

std::shared_ptr<ModSymSpace> divisor_space(long level) {
  std::lock_guard<std::recursive_mutex> lock(g_divisor_mutex);
  auto it = g_divisor_cache.find(level);
  if (it == g_divisor_cache.end()) {
    DivisorCacheEntry entry;
    entry.space = build_space(level);
    entry.forms = rational_newforms(entry.space);
    it = g_divisor_cache.emplace(level, std::move(entry)).first;
  }
  return it->second.space;
}

void clear_divisor_cache() {
  std::lock_guard<std::recursive_mutex> lock(g_divisor_mutex);
  g_divisor_cache.clear();
}

}  // namespace modvis
