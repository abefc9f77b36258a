#pragma once

#include <cassert>
#include <vector>

#include "modvis/intmatrix.hpp"
#include "modvis/rational.hpp"

namespace modvis {

// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  explicit RationalMatrix(const IntegerMatrix& m) : RationalMatrix(m.rows(), m.cols()) {
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) (*this)(i, j) = Rational(m(i, j));
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Rational& operator()(long r, long c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }
  const Rational& operator()(long r, long c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  RationalMatrix operator*(const RationalMatrix& b) const {
    assert(cols_ == b.rows_);
    RationalMatrix c(rows_, b.cols_);
    for (long i = 0; i < rows_; ++i)
      for (long k = 0; k < cols_; ++k) {
        const Rational& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (long j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  // Least common multiple of all denominators.
  Int denominator() const {
    Int d = 1;
    for (const auto& q : a_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
    return d;
  }

  // Returns d * this as an integer matrix; d must clear all denominators.
  IntegerMatrix scaled(const Int& d) const {
    IntegerMatrix m(rows_, cols_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) {
        Rational q = Rational(d) * (*this)(i, j);
        assert(is_integer(q));
        m(i, j) = q.get_num();
      }
    return m;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    assert(static_cast<long>(v.size()) == cols_);
    std::vector<Rational> out(rows_, Rational(0));
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

}  // namespace modvis
