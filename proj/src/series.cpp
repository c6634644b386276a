#include "combphys/series.hpp"

#include <utility>

#include "combphys/errors.hpp"

namespace combphys {

namespace {

void require_same_order(const Series& f, const Series& g) {
  if (f.order() != g.order()) {
    throw OrderMismatch(f.order(), g.order());
  }
}

}  // namespace

Series::Series(std::size_t order) : coeffs_(order + 1) {}

Series::Series(std::vector<Rational> egf_coeffs) : coeffs_(std::move(egf_coeffs)) {
  if (coeffs_.empty()) {
    throw ValidationError("series needs at least one coefficient");
  }
}

Series Series::constant(std::size_t order, const Rational& c) {
  Series s(order);
  s.coeffs_[0] = c;
  return s;
}

Series Series::variable(std::size_t order) {
  Series s(order);
  if (order >= 1) s.coeffs_[1] = 1;
  return s;
}

Series Series::exponential(std::size_t order) {
  return Series(std::vector<Rational>(order + 1, Rational(1)));
}

Series Series::from_taylor(std::span<const Rational> taylor) {
  std::vector<Rational> egf;
  egf.reserve(taylor.size());
  for (std::size_t n = 0; n < taylor.size(); ++n) {
    egf.push_back(taylor[n] * Rational(factorial(n)));
  }
  return Series(std::move(egf));
}

Rational Series::taylor(std::size_t n) const {
  return coeffs_.at(n) / Rational(factorial(n));
}

std::vector<Rational> Series::taylor_coeffs() const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (std::size_t n = 0; n < coeffs_.size(); ++n) out.push_back(taylor(n));
  return out;
}

Series Series::truncated(std::size_t order) const {
  Series s(order);
  for (std::size_t n = 0; n <= order && n < coeffs_.size(); ++n) s.coeffs_[n] = coeffs_[n];
  return s;
}

Series Series::with(std::size_t n, const Rational& value) const {
  Series s = *this;
  s.coeffs_.at(n) = value;
  return s;
}

Series operator+(const Series& f, const Series& g) {
  require_same_order(f, g);
  std::vector<Rational> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += g[n];
  return Series(std::move(out));
}

Series operator-(const Series& f, const Series& g) {
  require_same_order(f, g);
  std::vector<Rational> out(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] -= g[n];
  return Series(std::move(out));
}

Series operator-(const Series& f) { return Rational(-1) * f; }

Series operator*(const Rational& c, const Series& f) {
  std::vector<Rational> out;
  out.reserve(f.order() + 1);
  for (const auto& a : f.coeffs()) out.push_back(c * a);
  return Series(std::move(out));
}

Series operator*(const Series& f, const Series& g) {
  require_same_order(f, g);
  const std::size_t order = f.order();
  std::vector<Rational> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    Rational acc;
    for (std::size_t k = 0; k <= n; ++k) {
      if (f[k].is_zero() || g[n - k].is_zero()) continue;
      acc += Rational(binomial(n, k)) * f[k] * g[n - k];
    }
    out[n] = std::move(acc);
  }
  return Series(std::move(out));
}

Series compose(const Series& f, const Series& phi) {
  require_same_order(f, phi);
  if (!phi[0].is_zero()) {
    throw DomainError("composition undefined: inner series has non-zero constant term");
  }
  // Horner in the Taylor coefficients c_k = a_k / k!:
  //   f(phi) = c_0 + phi (c_1 + phi (c_2 + ...))
  const std::size_t order = f.order();
  Series acc = Series::constant(order, f.taylor(order));
  for (std::size_t k = order; k-- > 0;) {
    acc = acc * phi;
    acc = acc.with(0, acc[0] + f.taylor(k));
  }
  return acc;
}

Series series_exp(const Series& f) {
  if (!f[0].is_zero()) {
    throw DomainError("exp needs a series with zero constant term");
  }
  // h = exp(f) solves h' = f' h, i.e. h_{n+1} = sum_k C(n,k) f_{k+1} h_{n-k}.
  const std::size_t order = f.order();
  std::vector<Rational> h(order + 1);
  h[0] = 1;
  for (std::size_t n = 0; n < order; ++n) {
    Rational acc;
    for (std::size_t k = 0; k <= n; ++k) {
      if (f[k + 1].is_zero()) continue;
      acc += Rational(binomial(n, k)) * f[k + 1] * h[n - k];
    }
    h[n + 1] = std::move(acc);
  }
  return Series(std::move(h));
}

Series series_log(const Series& f) {
  if (f[0] != Rational(1)) {
    throw DomainError("log needs a series with constant term 1");
  }
  // g = log f solves f' = g' f: f_{n+1} = sum_k C(n,k) g_{k+1} f_{n-k}, with f_0 = 1.
  const std::size_t order = f.order();
  std::vector<Rational> g(order + 1);
  for (std::size_t n = 0; n < order; ++n) {
    Rational acc = f[n + 1];
    for (std::size_t k = 0; k < n; ++k) {
      acc -= Rational(binomial(n, k)) * g[k + 1] * f[n - k];
    }
    g[n + 1] = std::move(acc);
  }
  return Series(std::move(g));
}

Series hadamard(const Series& f, const Series& g) {
  require_same_order(f, g);
  std::vector<Rational> out;
  out.reserve(f.order() + 1);
  for (std::size_t n = 0; n <= f.order(); ++n) out.push_back(f[n] * g[n]);
  return Series(std::move(out));
}

Series times_variable(const Series& f) {
  std::vector<Rational> c(f.order() + 1);
  for (std::size_t n = 1; n <= f.order(); ++n) c[n] = Rational(static_cast<long>(n)) * f[n - 1];
  return Series(std::move(c));
}

}  // namespace combphys
