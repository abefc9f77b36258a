#include "modvis/p1.hpp"

#include <numeric>
#include <stdexcept>

namespace modvis {

namespace {

long mod_pos(long a, long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

// Inverse of a mod m for gcd(a, m) = 1, m >= 1.
long inv_mod(long a, long m) {
  if (m == 1) return 0;
  long t = 0, newt = 1, r = m, newr = mod_pos(a, m);
  while (newr != 0) {
    long q = r / newr;
    long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  return mod_pos(t, m);
}

}  // namespace

std::pair<long, long> P1Table::normalize(long n, long c, long d) {
  if (n == 1) return {0, 0};
  c = mod_pos(c, n);
  d = mod_pos(d, n);
  if (c == 0) return {0, 1};
  long g = gcd_l(c, n);
  long c1 = c / g;
  long ng = n / g;
  // lift an inverse of c1 mod n/g to a unit mod n
  long s = inv_mod(c1 % ng, ng);
  while (gcd_l(s, n) != 1) s += ng;
  long v = static_cast<long>((static_cast<long long>(s) * d) % n);
  // remaining freedom: units congruent to 1 mod n/g
  long best = v;
  for (long t = 1; t < g; ++t) {
    long long mu = 1 + static_cast<long long>(t) * ng;
    if (gcd_l(static_cast<long>(mu % n), n) != 1) continue;
    long cand = static_cast<long>((mu * v) % n);
    if (cand < best) best = cand;
  }
  return {g, best};
}

P1Table P1Table::build(long n) {
  P1Table t;
  t.n_ = n;
  if (n == 1) {
    t.reps_.emplace_back(0, 0);
    t.lookup_[0] = 0;
    return t;
  }
  t.reps_.emplace_back(0, 1);  // the class with c = 0
  t.lookup_.emplace(1, 0);
  for (long g = 1; g < n; ++g) {
    if (n % g != 0) continue;
    for (long d = 0; d < n; ++d) {
      if (gcd_l(gcd_l(g, d), n) != 1) continue;
      auto [cc, dd] = normalize(n, g, d);
      if (cc != g || dd != d) continue;  // not the canonical representative
      long long key = static_cast<long long>(cc) * n + dd;
      t.lookup_.emplace(key, static_cast<long>(t.reps_.size()));
      t.reps_.emplace_back(cc, dd);
    }
  }
  return t;
}

long P1Table::index(long c, long d) const {
  auto [cc, dd] = normalize(n_, c, d);
  long long key = static_cast<long long>(cc) * n_ + dd;
  auto it = lookup_.find(key);
  if (it == lookup_.end()) throw std::logic_error("P1Table::index: invalid class");
  return it->second;
}

long pone_size(long n) {
  long out = n;
  long m = n;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    out = out / q * (q + 1);
    while (m % q == 0) m /= q;
  }
  if (m > 1) out = out / m * (m + 1);
  return out;
}

}  // namespace modvis
