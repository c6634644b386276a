#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace combphys::detail {

// Partial Bell polynomials B_{n,k}(x_1, x_2, ...) for 0 <= k <= n < size,
// by the recursion on the block containing the first element:
//   B_{n,k} = sum_{j=1}^{n-k+1} C(n-1, j-1) x_j B_{n-j,k-1},  B_{0,0} = 1.
// x[j] holds x_j (x[0] is ignored). Scalar needs +, * and construction from
// an integer; binom(n, k) must return a Scalar.
template <typename Scalar, typename Binom>
std::vector<std::vector<Scalar>> partial_bell_table(std::span<const Scalar> x, std::size_t size,
                                                    Binom&& binom) {
  std::vector<std::vector<Scalar>> b(size);
  for (std::size_t n = 0; n < size; ++n) b[n].assign(n + 1, Scalar(0));
  if (size == 0) return b;
  b[0][0] = Scalar(1);
  for (std::size_t n = 1; n < size; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      Scalar acc(0);
      for (std::size_t j = 1; j <= n - k + 1; ++j) {
        if (j >= x.size()) break;
        const Scalar& prev = b[n - j][k - 1];
        acc = acc + binom(n - 1, j - 1) * x[j] * prev;
      }
      b[n][k] = acc;
    }
  }
  return b;
}

}  // namespace combphys::detail
