#include "modvis/congruence.hpp"

#include <numeric>

#include "modvis/errors.hpp"
#include "modvis/hecke.hpp"
#include "modvis/modmat.hpp"
#include "modvis/p1.hpp"

namespace modvis {

long sturm_bound(long n) { return (pone_size(n) + 5) / 6; }

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

}  // namespace

std::optional<Int> congruence_power(const ModSymSpace& space, RationalNewform& f,
                                    RationalNewform& g, long p, long safety) {
  if (f.level != g.level) throw ConfigError("congruence_power: levels differ");
  if (f.index == g.index) throw PairDegenerate("congruence_power needs two distinct newforms");
  if (p == 2 || !is_prime(p)) throw ConfigError("congruence_power: p must be an odd prime");
  if (safety < 1) throw ConfigError("congruence_power: safety must be >= 1");

  const long n = space.level;
  const long bound = safety * sturm_bound(n);
  Int acc = 0;
  for (long ell : primes_up_to(bound)) {
    if (n % ell == 0 || ell == p) continue;
    Int diff = eigenvalue(space, f, ell) - eigenvalue(space, g, ell);
    mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), diff.get_mpz_t());
    if (acc == 1) return std::nullopt;
  }
  if (acc == 0) throw BoundExceeded("congruence_power: forms agree on every tested prime");
  long k = ord_p(acc, Int(p));
  if (k == 0) return std::nullopt;
  Int r = 1;
  for (long i = 0; i < k; ++i) r *= p;
  return r;
}

std::vector<CongruentPair> find_visible_pairs(const ModSymSpace& space,
                                              std::vector<RationalNewform>& forms, long p_max,
                                              long safety) {
  std::vector<CongruentPair> out;
  const long n = space.level;
  const long sb = sturm_bound(n);
  const std::vector<long> small_primes = primes_up_to(sb);
  for (auto& f : forms) {
    if (!f.rank_zero) continue;
    for (auto& g : forms) {
      if (g.rank_zero) continue;
      for (long p = 3; p <= p_max; p += 2) {
        if (!is_prime(p)) continue;
        // prescreen on the stored eigenvalue range before certifying
        bool maybe = true;
        for (long ell : small_primes) {
          if (n % ell == 0 || ell == p) continue;
          Int diff = f.eigen.at(ell) - g.eigen.at(ell);
          if (!mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(p))) {
            maybe = false;
            break;
          }
        }
        if (!maybe) continue;
        auto r = congruence_power(space, f, g, p, safety);
        if (!r) continue;
        CongruentPair cp;
        cp.level = n;
        cp.f_index = f.index;
        cp.g_index = g.index;
        cp.p = p;
        cp.r = *r;
        cp.index_bound = safety * sb;
        cp.safety = safety;
        out.push_back(std::move(cp));
      }
    }
  }
  return out;
}

ExclusionResult excludes_other_congruences(const ModSymSpace& space, const RationalNewform& f,
                                           long p, const std::vector<RationalNewform>& level_forms,
                                           const RationalNewform* partner) {
  const long n = space.level;
  const uint64_t pu = static_cast<uint64_t>(p);
  std::vector<long> ells;
  for (long ell : primes_up_to(sturm_bound(n)))
    if (n % ell != 0 && ell != p) ells.push_back(ell);

  // direct comparison against every other computed rational system
  auto matches_f = [&](const std::map<long, Int>& table) {
    for (long ell : ells) {
      auto it = table.find(ell);
      if (it == table.end()) return false;
      Int diff = it->second - f.eigen.at(ell);
      if (!mpz_divisible_ui_p(diff.get_mpz_t(), static_cast<unsigned long>(p))) return false;
    }
    return true;
  };
  for (const auto& h : level_forms) {
    if (h.index == f.index) continue;
    if (partner && h.index == partner->index) continue;
    if (matches_f(h.eigen)) return ExclusionResult::kPossibleCongruence;
  }
  for (long m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    for (const auto& table : divisor_system_tables(m, sturm_bound(n)))
      if (matches_f(table)) return ExclusionResult::kPossibleCongruence;
  }

  for (long m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    std::shared_ptr<ModSymSpace> sm = (m == n) ? nullptr : divisor_space(m);
    const ModSymSpace& ms = (m == n) ? space : *sm;
    const long g2 = ms.cuspidal_rank();
    if (g2 == 0) continue;

    // start from the full space and intersect the mod-p kernels
    modp::Mat basis(g2, std::vector<uint64_t>(g2, 0));
    for (long i = 0; i < g2; ++i) basis[i][i] = 1;
    for (long ell : ells) {
      if (basis.empty()) break;
      IntegerMatrix t = ms.hecke_z(ell);
      uint64_t aval = modp::from_int(f.eigen.at(ell), pu);
      // rows v of `basis` span the current candidate space; solve (T - a) K^T x = 0
      modp::Mat tm = modp::reduce(t, pu);
      for (long i = 0; i < g2; ++i) tm[i][i] = modp::sub(tm[i][i], aval, pu);
      // B = (T - a) * basis^T: g2 x k
      long k = static_cast<long>(basis.size());
      modp::Mat b(g2, std::vector<uint64_t>(k, 0));
      for (long i = 0; i < g2; ++i)
        for (long j = 0; j < k; ++j) {
          uint64_t acc = 0;
          for (long c = 0; c < g2; ++c)
            if (tm[i][c] != 0 && basis[j][c] != 0) acc = modp::add(acc, modp::mul(tm[i][c], basis[j][c], pu), pu);
          b[i][j] = acc;
        }
      modp::Mat null = modp::nullspace(b, pu);  // rows x with B x = 0
      modp::Mat next;
      for (const auto& x : null) {
        std::vector<uint64_t> v(g2, 0);
        for (long j = 0; j < k; ++j)
          if (x[j] != 0)
            for (long c = 0; c < g2; ++c)
              if (basis[j][c] != 0) v[c] = modp::add(v[c], modp::mul(x[j], basis[j][c], pu), pu);
        next.push_back(std::move(v));
      }
      basis = std::move(next);
    }
    long kernel_dim = static_cast<long>(basis.size());

    if (m < n) {
      if (kernel_dim != 0) return ExclusionResult::kPossibleCongruence;
      continue;
    }

    // at the top level the kernel must be exactly the span forced by f (and
    // the congruent partner when present)
    modp::Mat forced;
    auto push_rows = [&](const IntegerLattice& l) {
      for (long i = 0; i < l.rank(); ++i) {
        std::vector<uint64_t> v(g2);
        for (long j = 0; j < g2; ++j) v[j] = modp::from_int(l.basis()(i, j), pu);
        forced.push_back(std::move(v));
      }
    };
    push_rows(f.sub_lattice);
    if (partner) push_rows(partner->sub_lattice);
    long forced_rank = modp::rank(forced, pu);
    // the forced span lies in the kernel; dimensions decide equality
    modp::Mat joint = forced;
    for (const auto& row : basis) joint.push_back(row);
    if (modp::rank(joint, pu) != forced_rank || kernel_dim != forced_rank)
      return ExclusionResult::kPossibleCongruence;
  }
  return ExclusionResult::kProvedExcluded;
}

}  // namespace modvis
