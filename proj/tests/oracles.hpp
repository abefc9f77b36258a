#pragma once

// Test-only oracles, independent of the engine's computation paths.

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracles {

inline long phi(long n) {
  long out = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    out = out / p * (p - 1);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out = out / m * (m - 1);
  return out;
}

inline std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline long index_mu(long n) {
  long out = n;
  for (long p : prime_divisors(n)) out = out / p * (p + 1);
  return out;
}

// Number of cusps of X_0(N).
inline long cusp_count(long n) {
  long out = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out += phi(std::gcd(d, n / d));
  return out;
}

// Genus of X_0(N) from the classical formula.
inline long genus(long n) {
  long mu = index_mu(n);
  long nu2 = 1, nu3 = 1;
  if (n % 4 == 0) {
    nu2 = 0;
  } else {
    for (long p : prime_divisors(n)) {
      if (p == 2) continue;
      nu2 *= (p % 4 == 1) ? 2 : 0;
    }
  }
  if (n % 9 == 0) {
    nu3 = 0;
  } else {
    for (long p : prime_divisors(n)) {
      if (p == 3) continue;
      nu3 *= (p % 3 == 1) ? 2 : 0;
    }
  }
  long nuinf = cusp_count(n);
  return (12 + mu - 3 * nu2 - 4 * nu3 - 6 * nuinf) / 12;
}

// Brute-force point count of a Weierstrass model over F_ell (affine + oo).
inline long curve_points(const std::array<long, 5>& a, long ell) {
  auto md = [&](long long x) {
    x %= ell;
    return x < 0 ? x + ell : x;
  };
  long count = 1;  // point at infinity
  for (long x = 0; x < ell; ++x)
    for (long y = 0; y < ell; ++y) {
      long long lhs = md(static_cast<long long>(y) * y + a[0] * x * y + a[2] * y);
      long long rhs = md(((static_cast<long long>(x) + a[1]) * x + a[3]) * x + a[4]);
      if (lhs == rhs) ++count;
    }
  return count;
}

inline long ap_from_counting(const std::array<long, 5>& a, long ell) {
  return ell + 1 - curve_points(a, ell);
}

// Truncated Dirichlet series for L(f, 1) in the rank-zero normalization:
// 2 * sum a_n / n * exp(-2 pi n / sqrt(N)). The coefficient callback must
// supply a_n for all n up to the bound.
template <typename CoefFn>
double numeric_l_value(long level, long nmax, CoefFn an) {
  const double c = 2.0 * M_PI / std::sqrt(static_cast<double>(level));
  double sum = 0.0;
  for (long n = 1; n <= nmax; ++n) sum += 2.0 * an(n) / static_cast<double>(n) * std::exp(-c * n);
  return sum;
}

// Crude tail bound for the series above with |a_n| <= n.
inline double numeric_l_tail(long level, long nmax) {
  const double c = 2.0 * M_PI / std::sqrt(static_cast<double>(level));
  return 2.0 * std::exp(-c * (nmax + 1)) / (1.0 - std::exp(-c));
}

}  // namespace oracles
