#pragma once

#include <cstddef>

#include "combphys/series.hpp"
#include "combphys/triangular.hpp"

namespace combphys {

// Generating pair of the EGF transform f -> g * (f o phi), with
// g = 1 + higher terms and phi = z + higher terms.
class RiordanPair {
 public:
  // Throws DomainError unless g_0 = 1, phi_0 = 0, phi_1 = 1 and the orders agree.
  RiordanPair(Series g, Series phi);

  const Series& g() const { return g_; }
  const Series& phi() const { return phi_; }
  std::size_t order() const { return g_.order(); }

  // g * (f o phi)
  Series transform(const Series& f) const;

  friend bool operator==(const RiordanPair&, const RiordanPair&) = default;

 private:
  Series g_;
  Series phi_;
};

// M[n,k] = (n!/k!) [z^n] g phi^k for 0 <= k <= n < size. Requires
// size - 1 <= order of the pair.
TriMatrix matrix_from_pair(const RiordanPair& p, std::size_t size);

// The unique candidate pair read off columns 0 and 1: g_n = M[n,0] and
// phi_n from M[n,1] = sum_m C(n,m) phi_m g_{n-m}. Never fails; use
// is_substitution_with_prefunction to decide membership.
RiordanPair pair_from_matrix(const TriMatrix& m);

// matrix_from_pair(pair_from_matrix(M)) == M, exactly.
bool is_substitution_with_prefunction(const TriMatrix& m);

}  // namespace combphys
