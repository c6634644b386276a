#include "combphys/riordan.hpp"

#include "combphys/errors.hpp"

namespace combphys {

RiordanPair::RiordanPair(Series g, Series phi) : g_(std::move(g)), phi_(std::move(phi)) {
  if (g_.order() != phi_.order()) {
    throw OrderMismatch(g_.order(), phi_.order());
  }
  if (g_[0] != Rational(1)) {
    throw DomainError("prefunction must start with 1");
  }
  if (!phi_[0].is_zero() || (phi_.order() >= 1 && phi_[1] != Rational(1))) {
    throw DomainError("substitution must be z + higher terms");
  }
}

Series RiordanPair::transform(const Series& f) const { return g_ * compose(f, phi_); }

TriMatrix matrix_from_pair(const RiordanPair& p, std::size_t size) {
  if (size == 0 || size - 1 > p.order()) {
    throw DomainError("matrix_from_pair: size " + std::to_string(size) + " needs series order >= " +
                      std::to_string(size == 0 ? 0 : size - 1) + ", have " + std::to_string(p.order()));
  }
  const std::size_t order = size - 1;
  const Series g = p.g().truncated(order);
  const Series phi = p.phi().truncated(order);
  LowerMatrix m(size);
  Series column = g;  // g * phi^k
  Rational k_factorial = 1;
  for (std::size_t k = 0; k < size; ++k) {
    if (k > 0) {
      column = column * phi;
      k_factorial *= Rational(static_cast<long>(k));
    }
    for (std::size_t n = k; n < size; ++n) m(n, k) = column[n] / k_factorial;
  }
  return TriMatrix(std::move(m));
}

RiordanPair pair_from_matrix(const TriMatrix& m) {
  const std::size_t size = m.size();
  std::vector<Rational> g(size);
  std::vector<Rational> phi(size);
  for (std::size_t n = 0; n < size; ++n) g[n] = m(n, 0);
  for (std::size_t n = 1; n < size; ++n) {
    Rational acc = m(n, 1);
    for (std::size_t j = 1; j < n; ++j) {
      acc -= Rational(binomial(n, j)) * phi[j] * g[n - j];
    }
    phi[n] = std::move(acc);  // g_0 = 1
  }
  return RiordanPair(Series(std::move(g)), Series(std::move(phi)));
}

bool is_substitution_with_prefunction(const TriMatrix& m) {
  return matrix_from_pair(pair_from_matrix(m), m.size()) == m;
}

}  // namespace combphys
