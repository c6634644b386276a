#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "combphys/rational.hpp"

namespace combphys {

// Dense lower-triangular rational matrix, indices 0..size-1. Entries above
// the diagonal are structurally zero and not stored.
class LowerMatrix {
 public:
  explicit LowerMatrix(std::size_t size);
  static LowerMatrix identity(std::size_t size);

  std::size_t size() const { return size_; }
  // Zero for j > i.
  Rational at(std::size_t i, std::size_t j) const;
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[index(i, j)]; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }

  bool is_unitriangular() const;
  bool is_strictly_lower() const;
  bool is_zero() const;

  // Leading principal submatrix of the given size.
  LowerMatrix leading(std::size_t m) const;

  // b_i = sum_k M[i,k] a_k; a must have size() entries.
  std::vector<Rational> apply(std::span<const Rational> a) const;

  friend bool operator==(const LowerMatrix&, const LowerMatrix&) = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }

  std::size_t size_;
  std::vector<Rational> data_;
};

LowerMatrix operator+(const LowerMatrix& a, const LowerMatrix& b);
LowerMatrix operator-(const LowerMatrix& a, const LowerMatrix& b);
LowerMatrix operator*(const LowerMatrix& a, const LowerMatrix& b);
LowerMatrix operator*(const Rational& c, const LowerMatrix& a);

// Lower unitriangular matrix (unit diagonal). The invariant is checked on
// construction and preserved by every operation returning a TriMatrix.
class TriMatrix {
 public:
  explicit TriMatrix(LowerMatrix m);
  static TriMatrix identity(std::size_t size) { return TriMatrix(LowerMatrix::identity(size)); }

  std::size_t size() const { return m_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  Rational at(std::size_t i, std::size_t j) const { return m_.at(i, j); }
  const LowerMatrix& lower() const { return m_; }
  TriMatrix leading(std::size_t m) const { return TriMatrix(m_.leading(m)); }

  friend bool operator==(const TriMatrix&, const TriMatrix&) = default;

 private:
  LowerMatrix m_;
};

TriMatrix tri_mul(const TriMatrix& a, const TriMatrix& b);

// log M = sum_{j>=1} (-1)^{j+1} (M - I)^j / j, a finite sum since M - I is
// nilpotent. The result is strictly lower triangular.
LowerMatrix tri_log(const TriMatrix& m);

// exp L = sum_j L^j / j! for strictly lower triangular L.
TriMatrix tri_exp(const LowerMatrix& l);

// M^t = exp(t log M).
TriMatrix fractional_power(const TriMatrix& m, const Rational& t);

}  // namespace combphys
