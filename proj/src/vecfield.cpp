#include "combphys/vecfield.hpp"

#include "combphys/errors.hpp"

namespace combphys {

LowerMatrix generator(const TriMatrix& m) {
  if (!is_substitution_with_prefunction(m)) {
    throw DomainError("generator: matrix is not a substitution with prefunction");
  }
  return tri_log(m);
}

LowerMatrix generator_probe(const TriMatrix& m, std::uint64_t k) {
  if (k == 0) {
    throw DomainError("generator_probe needs k >= 1");
  }
  const Rational kk(k);
  const TriMatrix root = fractional_power(m, Rational(1) / kk);
  return kk * (root.lower() - LowerMatrix::identity(m.size()));
}

VectorFieldOp decompose_operator(const LowerMatrix& l) {
  const std::size_t size = l.size();
  const std::size_t order = size - 1;
  std::vector<Rational> v(size);
  std::vector<Rational> lz(size);
  for (std::size_t n = 0; n < size; ++n) {
    v[n] = l.at(n, 0);
    if (size > 1) lz[n] = l.at(n, 1);
  }
  VectorFieldOp op{Series(order), Series(std::move(v))};
  op.q = Series(std::move(lz)) - times_variable(op.v);
  if (!op.v[0].is_zero() || !op.q[0].is_zero() || (order >= 1 && !op.q[1].is_zero())) {
    throw DomainError("decompose_operator: not the generator of a substitution with prefunction");
  }
  if (operator_matrix(op, size) != l) {
    throw DomainError("decompose_operator: matrix is not of the form q d/dz + v");
  }
  return op;
}

LowerMatrix operator_matrix(const VectorFieldOp& op, std::size_t size) {
  if (op.q.order() != op.v.order()) {
    throw OrderMismatch(op.q.order(), op.v.order());
  }
  if (size == 0 || size - 1 > op.q.order()) {
    throw DomainError("operator_matrix: size exceeds series order");
  }
  if (!op.q[0].is_zero() || (op.q.order() >= 1 && !op.q[1].is_zero()) || !op.v[0].is_zero()) {
    throw DomainError("operator_matrix: needs q_0 = q_1 = 0 and v_0 = 0");
  }
  LowerMatrix out(size);
  for (std::size_t n = 1; n < size; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      Rational acc = Rational(binomial(n, k)) * op.v[n - k];
      if (k >= 1) acc += Rational(binomial(n, k - 1)) * op.q[n - k + 1];
      out(n, k) = std::move(acc);
    }
  }
  return out;
}

std::vector<FieldCoefficient> vector_field_table(const Series& phi, std::size_t size) {
  const RiordanPair pair(Series::one(phi.order()), phi);
  const VectorFieldOp op = decompose_operator(generator(matrix_from_pair(pair, size)));
  std::vector<FieldCoefficient> rows;
  rows.reserve(size);
  for (std::size_t n = 0; n < size; ++n) rows.push_back({n, op.q[n], op.q.taylor(n)});
  return rows;
}

}  // namespace combphys
