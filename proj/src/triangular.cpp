#include "combphys/triangular.hpp"

#include "combphys/errors.hpp"

namespace combphys {

namespace {

void require_same_size(const LowerMatrix& a, const LowerMatrix& b) {
  if (a.size() != b.size()) {
    throw DomainError("matrix size mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

LowerMatrix::LowerMatrix(std::size_t size) : size_(size), data_(size * (size + 1) / 2) {
  if (size == 0) {
    throw ValidationError("matrix size must be positive");
  }
}

LowerMatrix LowerMatrix::identity(std::size_t size) {
  LowerMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

Rational LowerMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= size_ || j >= size_) {
    throw ValidationError("matrix index out of range");
  }
  return j > i ? Rational() : data_[index(i, j)];
}

bool LowerMatrix::is_unitriangular() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (data_[index(i, i)] != Rational(1)) return false;
  }
  return true;
}

bool LowerMatrix::is_strictly_lower() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (!data_[index(i, i)].is_zero()) return false;
  }
  return true;
}

bool LowerMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

LowerMatrix LowerMatrix::leading(std::size_t m) const {
  if (m == 0 || m > size_) {
    throw ValidationError("leading submatrix size out of range");
  }
  LowerMatrix out(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) out(i, j) = (*this)(i, j);
  return out;
}

std::vector<Rational> LowerMatrix::apply(std::span<const Rational> a) const {
  if (a.size() != size_) {
    throw DomainError("apply: vector length does not match matrix size");
  }
  std::vector<Rational> b(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    Rational acc;
    for (std::size_t k = 0; k <= i; ++k) acc += (*this)(i, k) * a[k];
    b[i] = std::move(acc);
  }
  return b;
}

LowerMatrix operator+(const LowerMatrix& a, const LowerMatrix& b) {
  require_same_size(a, b);
  LowerMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out(i, j) += b(i, j);
  return out;
}

LowerMatrix operator-(const LowerMatrix& a, const LowerMatrix& b) {
  require_same_size(a, b);
  LowerMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out(i, j) -= b(i, j);
  return out;
}

LowerMatrix operator*(const LowerMatrix& a, const LowerMatrix& b) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  LowerMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rational acc;
      for (std::size_t k = j; k <= i; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

LowerMatrix operator*(const Rational& c, const LowerMatrix& a) {
  LowerMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out(i, j) *= c;
  return out;
}

TriMatrix::TriMatrix(LowerMatrix m) : m_(std::move(m)) {
  if (!m_.is_unitriangular()) {
    throw DomainError("matrix is not unitriangular");
  }
}

TriMatrix tri_mul(const TriMatrix& a, const TriMatrix& b) { return TriMatrix(a.lower() * b.lower()); }

LowerMatrix tri_log(const TriMatrix& m) {
  const std::size_t n = m.size();
  const LowerMatrix nil = m.lower() - LowerMatrix::identity(n);
  LowerMatrix out(n);
  LowerMatrix power = nil;
  // (M - I)^j vanishes for j >= n.
  for (std::size_t j = 1; j < n && !power.is_zero(); ++j) {
    const Rational c = Rational((j % 2 == 1) ? 1 : -1, static_cast<long>(j));
    out = out + c * power;
    power = power * nil;
  }
  return out;
}

TriMatrix tri_exp(const LowerMatrix& l) {
  if (!l.is_strictly_lower()) {
    throw DomainError("tri_exp needs a strictly lower triangular matrix");
  }
  const std::size_t n = l.size();
  LowerMatrix out = LowerMatrix::identity(n);
  LowerMatrix term = LowerMatrix::identity(n);
  for (std::size_t j = 1; j < n; ++j) {
    term = Rational(1, static_cast<long>(j)) * (term * l);
    if (term.is_zero()) break;
    out = out + term;
  }
  return TriMatrix(std::move(out));
}

TriMatrix fractional_power(const TriMatrix& m, const Rational& t) {
  return tri_exp(t * tri_log(m));
}

}  // namespace combphys
