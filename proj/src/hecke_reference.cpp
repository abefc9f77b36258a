#include <map>
#include <numeric>

#include "modvis/hecke.hpp"

namespace modvis {

namespace {

long mod_pos(long a, long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

// Manin symbols of the path {oo, num/den} via continued-fraction convergents:
// segment i contributes the class of (q_i : (-1)^(i-1) q_(i-1)).
void cf_symbols(const ModSymSpace& s, long long num, long long den, long sign,
                std::map<long, long>& acc) {
  const long n = s.level;
  if (den == 0) return;
  long long g = std::gcd(std::abs(num), std::abs(den));
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long q_im2 = 1, q_im1 = 0;  // q_{-2}, q_{-1}
  long long a = num, b = den;
  for (long i = 0;; ++i) {
    long long quot = (a >= 0) ? a / b : -((-a + b - 1) / b);  // floor
    long long rem = a - quot * b;
    long long q_i = quot * q_im1 + q_im2;
    long sgn = (i % 2 == 0) ? -1 : 1;  // (-1)^(i-1)
    long c = mod_pos(static_cast<long>(q_i % n), n);
    long d = mod_pos(static_cast<long>((sgn * (q_im1 % n)) % n), n);
    acc[s.p1.index(c, d)] += sign;
    if (rem == 0) break;
    q_im2 = q_im1;
    q_im1 = q_i;
    a = b;
    b = rem;
  }
}

}  // namespace

SymbolImages coset_symbol_images(const ModSymSpace& s, long p) {
  const long n = s.level;
  const long dim = s.dim_v;
  SymbolImages images(dim);

  std::vector<std::array<long, 4>> cosets;
  for (long r = 0; r < p; ++r) cosets.push_back({1, r, 0, p});
  if (n % p != 0) cosets.push_back({p, 0, 0, 1});

  for (long j = 0; j < dim; ++j) {
    auto [c, d] = s.p1.reps()[s.free_gen[j]];
    long cc = mod_pos(c, n), dd = mod_pos(d, n);
    while (std::gcd(cc, dd) != 1) dd += n;
    long x = 0, y = 0;
    {
      long r0 = cc, r1 = dd, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
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
    const long a = y, b = -x;  // [a, b; cc, dd] in SL2(Z), path {b/dd, a/cc}
    std::map<long, long> acc;
    for (const auto& gm : cosets) {
      long long a1n = gm[0] * static_cast<long long>(b) + gm[1] * static_cast<long long>(dd);
      long long a1d = gm[2] * static_cast<long long>(b) + gm[3] * static_cast<long long>(dd);
      long long b1n = gm[0] * static_cast<long long>(a) + gm[1] * static_cast<long long>(cc);
      long long b1d = gm[2] * static_cast<long long>(a) + gm[3] * static_cast<long long>(cc);
      cf_symbols(s, b1n, b1d, +1, acc);
      cf_symbols(s, a1n, a1d, -1, acc);
    }
    for (const auto& [sym, mult] : acc)
      if (mult != 0) images[j].emplace_back(sym, mult);
  }
  return images;
}

}  // namespace modvis
