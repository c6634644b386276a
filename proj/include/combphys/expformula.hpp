#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "combphys/errors.hpp"
#include "combphys/series.hpp"
#include "combphys/triangular.hpp"

namespace combphys {

// c_m = number of connected structures on m labelled points, m = 1..N.
struct ConnectedCounts {
  std::vector<std::uint64_t> counts;  // counts[m-1] = c_m

  std::uint64_t operator()(std::size_t m) const { return counts.at(m - 1); }
  std::size_t length() const { return counts.size(); }

  // Equivalence relations: every block is one connected structure.
  static ConnectedCounts equivalence_relations(std::size_t length);
  // Idempotent endofunctions: a connected one is a root fixed point with
  // every other point mapped onto it, so c_m = m.
  static ConnectedCounts idempotent_endofunctions(std::size_t length);
};

// phi_c(z) = sum_m c_m z^m / m!  as an EGF of the given order.
Series connected_series(const ConnectedCounts& c, std::size_t order);

// M[n,k] = B_{n,k}(c_1, c_2, ...): structures on [1..n] with k components.
// General lower-triangular result (diagonal c_1^k).
LowerMatrix partial_bell_matrix(const ConnectedCounts& c, std::size_t size);

// Same matrix, as a matrix of substitution. Needs c_1 = 1 so that the
// diagonal is 1; throws DomainError otherwise.
TriMatrix matrix_from_connected_counts(const ConnectedCounts& c, std::size_t size);

// Set partitions of [1..n] tallied by number of blocks (direct enumeration).
std::map<int, std::uint64_t> oracle_equivalence(int n, const Limits& limits = {});

// Idempotent endofunctions of [1..n] tallied by number of weakly connected
// components of the functional graph (scan of all n^n maps).
std::map<int, std::uint64_t> oracle_idempotent(int n, const Limits& limits = {});

}  // namespace combphys
