#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "modvis/rational.hpp"

namespace modvis {

// Dense row-major matrix over Z with arbitrary-precision entries.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static IntegerMatrix identity(long n) {
    IntegerMatrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Int& operator()(long r, long c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }
  const Int& operator()(long r, long c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return a_[static_cast<size_t>(r) * cols_ + c];
  }

  bool operator==(const IntegerMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (x != 0) return false;
    return true;
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntegerMatrix operator*(const IntegerMatrix& b) const {
    assert(cols_ == b.rows_);
    IntegerMatrix c(rows_, b.cols_);
    for (long i = 0; i < rows_; ++i)
      for (long k = 0; k < cols_; ++k) {
        const Int& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (long j = 0; j < b.cols_; ++j) {
          if (b(k, j) == 0) continue;
          c(i, j) += aik * b(k, j);
        }
      }
    return c;
  }

  IntegerMatrix operator+(const IntegerMatrix& b) const {
    assert(rows_ == b.rows_ && cols_ == b.cols_);
    IntegerMatrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] + b.a_[i];
    return c;
  }

  IntegerMatrix operator-(const IntegerMatrix& b) const {
    assert(rows_ == b.rows_ && cols_ == b.cols_);
    IntegerMatrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] - b.a_[i];
    return c;
  }

  IntegerMatrix operator*(const Int& s) const {
    IntegerMatrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] * s;
    return c;
  }

  std::vector<Int> row(long r) const {
    std::vector<Int> v(cols_);
    for (long j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
    return v;
  }

  void set_row(long r, const std::vector<Int>& v) {
    assert(static_cast<long>(v.size()) == cols_);
    for (long j = 0; j < cols_; ++j) (*this)(r, j) = v[j];
  }

  // Stacks rows of b below this matrix.
  IntegerMatrix vstack(const IntegerMatrix& b) const {
    assert(cols_ == b.cols_ || rows_ == 0 || b.rows_ == 0);
    long c = rows_ > 0 ? cols_ : b.cols_;
    IntegerMatrix m(rows_ + b.rows_, c);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (long i = 0; i < b.rows_; ++i)
      for (long j = 0; j < b.cols_; ++j) m(rows_ + i, j) = b(i, j);
    return m;
  }

  // v -> M v for a column vector over Z.
  std::vector<Int> apply(const std::vector<Int>& v) const {
    assert(static_cast<long>(v.size()) == cols_);
    std::vector<Int> out(rows_, Int(0));
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    assert(static_cast<long>(v.size()) == cols_);
    std::vector<Rational> out(rows_, Rational(0));
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0 && v[j] != 0) out[i] += Rational((*this)(i, j)) * v[j];
    return out;
  }

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

}  // namespace modvis
