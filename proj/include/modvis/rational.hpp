#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace modvis {

// All exact arithmetic in the engine runs on GMP integers and rationals.
// mpq_class keeps gcd(num, den) = 1 and den >= 1, which is exactly the
// canonical form we need; zero is stored as 0/1.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// p-adic valuation of a nonzero integer.
inline long ord_p(Int n, const Int& p) {
  if (n == 0) return -1;  // caller guards; -1 flags "infinite"
  long v = 0;
  n = abs(n);
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

// p-adic valuation of a nonzero rational (may be negative).
inline long ord_p(const Rational& q, const Int& p) {
  return ord_p(Int(q.get_num()), p) - ord_p(Int(q.get_den()), p);
}

// Strips every factor of 2 from numerator and denominator.
inline Rational odd_part(const Rational& q) {
  if (q == 0) return q;
  Int num = q.get_num(), den = q.get_den();
  while (mpz_even_p(num.get_mpz_t())) num /= 2;
  while (mpz_even_p(den.get_mpz_t())) den /= 2;
  return make_rational(num, den);
}

inline Int odd_part(Int n) {
  if (n == 0) return n;
  while (mpz_even_p(n.get_mpz_t())) n /= 2;
  return n;
}

// Serialized form used in reports: "num" for integers, "num/den" otherwise.
inline std::string rational_str(const Rational& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return Rational(0);
  q.canonicalize();
  return q;
}

inline bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline bool is_prime(long n) { return is_prime(Int(n)); }

}  // namespace modvis
