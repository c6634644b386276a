#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "combphys/rational.hpp"

namespace combphys {

// Truncated formal power series in exponential (EGF) convention:
//   f(z) = sum_{n <= order} a_n z^n / n!
// The stored coefficients are the a_n, not the Taylor coefficients.
// The truncation order travels with the value; binary operations
// reject operands of different orders instead of coercing.
class Series {
 public:
  // Zero series of the given order.
  explicit Series(std::size_t order);
  // Order is coeffs.size() - 1; coeffs must be non-empty.
  explicit Series(std::vector<Rational> egf_coeffs);

  static Series zero(std::size_t order) { return Series(order); }
  static Series constant(std::size_t order, const Rational& c);
  static Series one(std::size_t order) { return constant(order, 1); }
  // The identity substitution f(z) = z.
  static Series variable(std::size_t order);
  // e^z: every a_n equals 1.
  static Series exponential(std::size_t order);
  static Series from_taylor(std::span<const Rational> taylor);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
  std::span<const Rational> coeffs() const { return coeffs_; }

  // [z^n] f = a_n / n!
  Rational taylor(std::size_t n) const;
  std::vector<Rational> taylor_coeffs() const;

  // Drop (or zero-extend) to another order.
  Series truncated(std::size_t order) const;
  Series with(std::size_t n, const Rational& value) const;

  friend bool operator==(const Series&, const Series&) = default;

 private:
  std::vector<Rational> coeffs_;
};

Series operator+(const Series& f, const Series& g);
Series operator-(const Series& f, const Series& g);
Series operator-(const Series& f);
Series operator*(const Rational& c, const Series& f);
// EGF (binomial) product: (fg)_n = sum_k C(n,k) f_k g_{n-k}.
Series operator*(const Series& f, const Series& g);

// f(phi(z)); phi must have zero constant term.
Series compose(const Series& f, const Series& phi);
// exp(f); f must have zero constant term.
Series series_exp(const Series& f);
// log(f); f must have constant term 1.
Series series_log(const Series& f);
// Hadamard exponential product: coefficientwise a_n b_n.
Series hadamard(const Series& f, const Series& g);
// Multiplication by z: (z f)_n = n f_{n-1}.
Series times_variable(const Series& f);

}  // namespace combphys
