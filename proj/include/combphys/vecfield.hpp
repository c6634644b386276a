#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "combphys/riordan.hpp"
#include "combphys/series.hpp"
#include "combphys/triangular.hpp"

namespace combphys {

// The operator f -> q f' + v f on EGFs: a vector field q(z) d/dz plus a
// scalar field v(z).
struct VectorFieldOp {
  Series q;
  Series v;

  friend bool operator==(const VectorFieldOp&, const VectorFieldOp&) = default;
};

// Infinitesimal generator lim_{k->inf} k (M^{1/k} - I), realized exactly as
// log M. Throws DomainError when M is not a substitution with prefunction.
LowerMatrix generator(const TriMatrix& m);

// The finite-k term k (M^{1/k} - I), exact.
LowerMatrix generator_probe(const TriMatrix& m, std::uint64_t k);

// Read (q, v) off a generator: v = L·1 (column 0), q = L·z - z v (column 1).
// Throws DomainError when the reconstruction does not reproduce L, i.e. L is
// not the matrix of an operator q d/dz + v on this truncation.
VectorFieldOp decompose_operator(const LowerMatrix& l);

// Matrix of f -> q f' + v f in the EGF basis:
//   L[n,k] = C(n,k-1) q_{n-k+1} + C(n,k) v_{n-k}.
// Needs q_0 = q_1 = 0 and v_0 = 0 (strictly lower result) and
// size - 1 <= order.
LowerMatrix operator_matrix(const VectorFieldOp& op, std::size_t size);

struct FieldCoefficient {
  std::size_t n;
  Rational egf;     // a_n of q
  Rational taylor;  // a_n / n!
};

// Coefficients of the vector field q of the pure substitution z -> phi(z),
// on a matrix of the given size.
std::vector<FieldCoefficient> vector_field_table(const Series& phi, std::size_t size);

}  // namespace combphys
