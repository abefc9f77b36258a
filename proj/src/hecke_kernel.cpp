#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "modvis/errors.hpp"
#include "modvis/hecke.hpp"

namespace modvis {

const std::vector<std::array<long, 4>>& heilbronn_merel(long n) {
  static std::mutex mtx;
  static std::map<long, std::vector<std::array<long, 4>>> memo;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;

  // Matrices [a, b; c, d] with det n, a > b >= 0 and d > c >= 0.
  std::vector<std::array<long, 4>> out;
  for (long a = 1; a <= n; ++a) {
    if (n % a == 0) {
      long d = n / a;
      for (long c = 0; c < d; ++c) out.push_back({a, 0, c, d});
    }
    for (long b = 1; b < a; ++b) {
      // a d - b c = n with 0 <= c < d  <=>  n/a <= d < n/(a-b), a d = n mod b
      long dlo = (n + a - 1) / a;
      long dhi = (n + (a - b) - 1) / (a - b) - 1;
      for (long d = dlo; d <= dhi; ++d) {
        if ((a * d - n) % b != 0) continue;
        long c = (a * d - n) / b;
        out.push_back({a, b, c, d});
      }
    }
  }
  return memo.emplace(n, std::move(out)).first->second;
}

namespace {

long mod_pos(long a, long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

std::vector<std::pair<long, long>> factorize(long n) {
  std::vector<std::pair<long, long>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

SymbolImages hecke_symbol_images(const ModSymSpace& s, long p, HeckeBackend backend) {
  const long n = s.level;
  const long dim = s.dim_v;

  // U_q at q | N goes through the degeneracy-coset sum on both backends.
  if (backend == HeckeBackend::kSerialReference || n % p == 0) return coset_symbol_images(s, p);

  const auto& mats = heilbronn_merel(p);
  SymbolImages images(dim);
  const long m = s.p1.size();
#pragma omp parallel
  {
    std::vector<long> acc(m, 0);
    std::vector<long> touched;
    touched.reserve(mats.size());
#pragma omp for schedule(static)
    for (long j = 0; j < dim; ++j) {
      auto [c, d] = s.p1.reps()[s.free_gen[j]];
      for (const auto& h : mats) {
        long cc = static_cast<long>((static_cast<long long>(c) * h[0] + static_cast<long long>(d) * h[2]) % n);
        long dd = static_cast<long>((static_cast<long long>(c) * h[1] + static_cast<long long>(d) * h[3]) % n);
        long idx = s.p1.index(cc, dd);
        if (acc[idx] == 0) touched.push_back(idx);
        acc[idx] += 1;
      }
      std::sort(touched.begin(), touched.end());
      images[j].reserve(touched.size());
      for (long idx : touched) {
        images[j].emplace_back(idx, acc[idx]);
        acc[idx] = 0;
      }
      touched.clear();
    }
  }
  return images;
}

namespace {

// Shared pipeline: from per-generator symbol multiplicities and generator
// weights (x-coordinates scaled by delta) to a y-coordinate vector.
std::vector<Int> accumulate_y(const ModSymSpace& s, const SymbolImages& images,
                              const std::vector<Int>& gen_weights) {
  const long m = s.p1.size();
  std::vector<Int> w(m, Int(0));
  for (long j = 0; j < s.dim_v; ++j) {
    if (gen_weights[j] == 0) continue;
    for (const auto& [sym, mult] : images[j]) w[sym] += mult * gen_weights[j];
  }
  std::vector<Int> r(s.dim_v, Int(0));
  for (long sym = 0; sym < m; ++sym) {
    if (w[sym] == 0) continue;
    for (const auto& [col, val] : s.sym_v[sym]) r[col] += w[sym] * val;
  }
  return s.solve_ht(r);  // = delta * (y-coords of the image)
}

IntegerMatrix matrix_from_images(const ModSymSpace& s, const SymbolImages& images) {
  const long dim = s.dim_v;
  IntegerMatrix t(dim, dim);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < dim; ++k) {
    std::vector<Int> weights(dim);
    for (long j = 0; j < dim; ++j) weights[j] = s.h(k, j);
    std::vector<Int> col = accumulate_y(s, images, weights);
    for (long i = 0; i < dim; ++i) {
      Int q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), col[i].get_mpz_t(), s.delta.get_mpz_t());
      if (r != 0) throw EngineError("hecke column not integral in y-coordinates");
      t(i, k) = q;
    }
  }
  return t;
}

IntegerMatrix prime_power_matrix_y(const ModSymSpace& s, long p, long e, HeckeBackend backend) {
  IntegerMatrix tp = matrix_from_images(s, hecke_symbol_images(s, p, backend));
  if (e == 1) return tp;
  if (s.level % p == 0) {
    IntegerMatrix acc = tp;
    for (long i = 1; i < e; ++i) acc = acc * tp;
    return acc;
  }
  // T_{p^k} = T_p T_{p^(k-1)} - p T_{p^(k-2)}
  IntegerMatrix prev = IntegerMatrix::identity(s.dim_v);
  IntegerMatrix cur = tp;
  for (long i = 1; i < e; ++i) {
    IntegerMatrix next = tp * cur - prev * Int(p);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

IntegerMatrix hecke_matrix_y(const ModSymSpace& s, long n, HeckeBackend backend) {
  if (n < 1) throw ConfigError("hecke index must be positive");
  if (n == 1) return IntegerMatrix::identity(s.dim_v);
  IntegerMatrix acc = IntegerMatrix::identity(s.dim_v);
  for (const auto& [p, e] : factorize(n)) acc = acc * prime_power_matrix_y(s, p, e, backend);
  return acc;
}

IntegerMatrix hecke_matrix(const ModSymSpace& s, long n, HeckeBackend backend) {
  IntegerMatrix ty = hecke_matrix_y(s, n, backend);
  if (s.cuspidal_rank() == 0) return IntegerMatrix(0, 0);
  RationalMatrix tz = solve_right(s.k_basis.transpose(), ty * s.k_basis.transpose());
  if (tz.denominator() != 1) throw EngineError("hecke does not preserve the integral lattice");
  return tz.scaled(1);
}

std::vector<std::vector<Rational>> hecke_apply_y(const ModSymSpace& s, long n,
                                                 const std::vector<std::vector<Rational>>& vs,
                                                 HeckeBackend backend) {
  if (n < 1) throw ConfigError("hecke index must be positive");
  std::vector<std::vector<Rational>> cur = vs;
  if (n == 1) return cur;

  auto apply_prime = [&](long p, const std::vector<std::vector<Rational>>& in) {
    SymbolImages images = hecke_symbol_images(s, p, backend);
    std::vector<std::vector<Rational>> out(in.size());
    for (size_t v = 0; v < in.size(); ++v) {
      RationalMatrix col(s.dim_v, 1);
      for (long i = 0; i < s.dim_v; ++i) col(i, 0) = in[v][i];
      Int den = col.denominator();
      IntegerMatrix vi = col.scaled(den);
      // generator weights: H^T * v (scaled by delta via solve later)
      std::vector<Int> weights(s.dim_v, Int(0));
      for (long j = 0; j < s.dim_v; ++j)
        for (long k = 0; k < s.dim_v; ++k)
          if (s.h(k, j) != 0 && vi(k, 0) != 0) weights[j] += s.h(k, j) * vi(k, 0);
      std::vector<Int> img = accumulate_y(s, images, weights);
      Rational scale = make_rational(1, s.delta * den);
      std::vector<Rational> y(s.dim_v);
      for (long i = 0; i < s.dim_v; ++i) y[i] = Rational(img[i]) * scale;
      out[v] = std::move(y);
    }
    return out;
  };

  for (const auto& [p, e] : factorize(n)) {
    if (s.level % p == 0) {
      for (long i = 0; i < e; ++i) cur = apply_prime(p, cur);
    } else {
      // vector form of the prime-power recursion
      std::vector<std::vector<Rational>> prev = cur;
      std::vector<std::vector<Rational>> now = apply_prime(p, cur);
      for (long i = 1; i < e; ++i) {
        std::vector<std::vector<Rational>> next = apply_prime(p, now);
        for (size_t v = 0; v < next.size(); ++v)
          for (long c = 0; c < s.dim_v; ++c) next[v][c] -= Rational(p) * prev[v][c];
        prev = std::move(now);
        now = std::move(next);
      }
      cur = std::move(now);
    }
  }
  return cur;
}

IntegerMatrix star_matrix_y(const ModSymSpace& s) {
  const long n = s.level;
  SymbolImages images(s.dim_v);
  for (long j = 0; j < s.dim_v; ++j) {
    auto [c, d] = s.p1.reps()[s.free_gen[j]];
    images[j].emplace_back(s.p1.index(mod_pos(-c, n), d), 1);
  }
  return matrix_from_images(s, images);
}

}  // namespace modvis
