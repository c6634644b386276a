#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "combphys/errors.hpp"
#include "combphys/partitions.hpp"
#include "combphys/rational.hpp"

namespace combphys {

using IntMatrix = std::vector<std::vector<int>>;

// Class of a packed non-negative integer matrix under independent row and
// column permutations, held by its canonical representative: the matrix
// whose row-major flattening is lexicographically least in the orbit.
// Rows are black spots (blocks of the first partition), columns are white
// spots (blocks of the second).
class Diagram {
 public:
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int i, int j) const { return canon_[static_cast<std::size_t>(i * cols_ + j)]; }
  std::span<const int> flat() const { return canon_; }
  IntMatrix matrix() const;
  // |d|: number of lines, i.e. the sum of all entries.
  int lines() const;

  // "r0c0 r0c1/r1c0 r1c1"
  std::string flat_str() const;

  friend auto operator<=>(const Diagram&, const Diagram&) = default;
  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  friend Diagram canonical_class(const IntMatrix& m);
  Diagram(int rows, int cols, std::vector<int> canon)
      : rows_(rows), cols_(cols), canon_(std::move(canon)) {}

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> canon_;
};

// Entry (i,j) = |B_i(p1) ∩ B_j(p2)| using the canonical block orders.
IntMatrix intersection_matrix(const SetPartition& p1, const SetPartition& p2);

// Throws ValidationError for ragged, negative, or unpacked input.
Diagram canonical_class(const IntMatrix& m);

struct SpotTypes {
  MultiIndex alpha;  // white spots: column sums
  MultiIndex beta;   // black spots: row sums
};
SpotTypes spot_types(const Diagram& d);

struct EnumOptions {
  Limits limits{};
  unsigned workers = 1;
};

// Fibre cardinalities of (P1, P2) -> class(intersection matrix) over all of
// UP_n x UP_n.
std::map<Diagram, std::uint64_t> enum_diagrams_with_mult(int n, const EnumOptions& options = {});

// Same quantity for one diagram, with P1 fixed to a single partition of
// type beta(d) and the count scaled by n!/|stab(P1)|.
std::uint64_t mult_fast(const Diagram& d, const Limits& limits = {});

// Polynomial in two alphabets L = {L_1, L_2, ...} and V = {V_1, V_2, ...}
// with integer coefficients. Keys are (L-exponents, V-exponents); the map
// keeps monomials sorted so equality is syntactic.
class TwoAlphabetPoly {
 public:
  using Monomial = std::pair<MultiIndex, MultiIndex>;

  void add(const MultiIndex& l, const MultiIndex& v, std::int64_t coeff);
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  std::int64_t coeff(const MultiIndex& l, const MultiIndex& v) const;

  // Substitute L_k = l_values[k-1], V_k = v_values[k-1].
  Rational evaluate(std::span<const Rational> l_values, std::span<const Rational> v_values) const;

  std::string str() const;

  friend bool operator==(const TwoAlphabetPoly&, const TwoAlphabetPoly&) = default;

 private:
  std::map<Monomial, std::int64_t> terms_;
};

// Coefficient of z^n/n! in H(F, G) for free exponentials F = exp(sum L_k z^k/k!),
// G = exp(sum V_k z^k/k!), summed over diagrams with multiplicities.
TwoAlphabetPoly hadamard_via_diagrams(int n, const EnumOptions& options = {});

// Same coefficient as the direct double sum over pairs of partitions.
TwoAlphabetPoly hadamard_double_sum(int n, const Limits& limits = {});

}  // namespace combphys
