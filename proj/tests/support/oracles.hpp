#pragma once

// Brute-force oracles used only by the tests. Nothing here calls into the
// library code path it is meant to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "combphys/rational.hpp"
#include "combphys/riordan.hpp"
#include "combphys/series.hpp"

namespace oracle {

// Bell numbers by B_{n+1} = sum_k C(n,k) B_k with 64-bit integers.
inline std::vector<std::uint64_t> bell_recurrence(int max_n) {
  std::vector<std::uint64_t> b{1};
  for (int n = 0; n < max_n; ++n) {
    std::uint64_t next = 0;
    std::uint64_t c = 1;  // C(n,k)
    for (int k = 0; k <= n; ++k) {
      next += c * b[static_cast<std::size_t>(k)];
      c = c * static_cast<std::uint64_t>(n - k) / static_cast<std::uint64_t>(k + 1);
    }
    b.push_back(next);
  }
  return b;
}

// Count set partitions of an n-set by block count, by placing elements one
// at a time into an existing block or a new one.
inline std::map<int, std::uint64_t> partitions_by_blocks(int n) {
  std::map<int, std::uint64_t> out;
  std::function<void(int, int)> place = [&](int element, int blocks) {
    if (element == n) {
      ++out[blocks];
      return;
    }
    for (int b = 0; b < blocks; ++b) place(element + 1, blocks);
    place(element + 1, blocks + 1);
  };
  place(0, 0);
  return out;
}

inline std::uint64_t count_partitions(int n) {
  std::uint64_t total = 0;
  for (auto [k, c] : partitions_by_blocks(n)) total += c;
  return total;
}

// Involutions of [n] by scanning all permutations.
inline std::uint64_t count_involutions(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool inv = true;
    for (int i = 0; i < n && inv; ++i) inv = p[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] == i;
    count += inv ? 1 : 0;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Lexicographically least row-major flattening over every row permutation
// and every column permutation.
inline std::vector<int> brute_canonical(const std::vector<std::vector<int>>& m) {
  const std::size_t p = m.size();
  const std::size_t q = m.front().size();
  std::vector<std::size_t> rows(p);
  std::vector<std::size_t> cols(q);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<int> best;
  do {
    std::iota(cols.begin(), cols.end(), 0);
    do {
      std::vector<int> flat;
      for (auto r : rows)
        for (auto c : cols) flat.push_back(m[r][c]);
      if (best.empty() || flat < best) best = flat;
    } while (std::next_permutation(cols.begin(), cols.end()));
  } while (std::next_permutation(rows.begin(), rows.end()));
  return best;
}

// All packed p x q non-negative integer matrices with entry sum n, for all
// p, q <= n.
inline std::vector<std::vector<std::vector<int>>> packed_matrices(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      const auto cells = static_cast<std::size_t>(p * q);
      std::vector<int> flat(cells, 0);
      std::function<void(std::size_t, int)> fill = [&](std::size_t i, int left) {
        if (i + 1 == cells) {
          flat[i] = left;
          std::vector<std::vector<int>> m(static_cast<std::size_t>(p), std::vector<int>(static_cast<std::size_t>(q)));
          std::vector<int> rs(static_cast<std::size_t>(p), 0), cs(static_cast<std::size_t>(q), 0);
          for (int r = 0; r < p; ++r)
            for (int c = 0; c < q; ++c) {
              const int v = flat[static_cast<std::size_t>(r * q + c)];
              m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v;
              rs[static_cast<std::size_t>(r)] += v;
              cs[static_cast<std::size_t>(c)] += v;
            }
          if (std::count(rs.begin(), rs.end(), 0) == 0 && std::count(cs.begin(), cs.end(), 0) == 0) out.push_back(m);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          flat[i] = v;
          fill(i + 1, left - v);
        }
      };
      if (static_cast<int>(cells) >= 1 && p <= n && q <= n) fill(0, n);
    }
  }
  return out;
}

inline combphys::BigInt binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  combphys::BigInt c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

inline combphys::Rational random_rational(std::mt19937_64& rng, int span = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  return combphys::Rational(num(rng), den(rng));
}

inline combphys::Series random_series(std::mt19937_64& rng, std::size_t order, bool zero_constant) {
  std::vector<combphys::Rational> a(order + 1);
  for (auto& x : a) x = random_rational(rng);
  if (zero_constant) a[0] = 0;
  return combphys::Series(std::move(a));
}

inline combphys::RiordanPair random_pair(std::mt19937_64& rng, std::size_t order) {
  auto g = random_series(rng, order, false).with(0, combphys::Rational(1));
  auto phi = random_series(rng, order, true);
  if (order >= 1) phi = phi.with(1, combphys::Rational(1));
  return combphys::RiordanPair(std::move(g), std::move(phi));
}

}  // namespace oracle
