#include "combphys/expformula.hpp"

#include <numeric>

#include "combphys/detail/partial_bell.hpp"
#include "combphys/partitions.hpp"

namespace combphys {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

ConnectedCounts ConnectedCounts::equivalence_relations(std::size_t length) {
  return {std::vector<std::uint64_t>(length, 1)};
}

ConnectedCounts ConnectedCounts::idempotent_endofunctions(std::size_t length) {
  ConnectedCounts c{std::vector<std::uint64_t>(length)};
  std::iota(c.counts.begin(), c.counts.end(), std::uint64_t{1});
  return c;
}

Series connected_series(const ConnectedCounts& c, std::size_t order) {
  std::vector<Rational> a(order + 1);
  for (std::size_t m = 1; m <= order && m <= c.length(); ++m) a[m] = Rational(c(m));
  return Series(std::move(a));
}

LowerMatrix partial_bell_matrix(const ConnectedCounts& c, std::size_t size) {
  if (size == 0) {
    throw ValidationError("partial_bell_matrix: size must be positive");
  }
  if (c.length() + 1 < size) {
    throw DomainError("partial_bell_matrix: need c_1..c_" + std::to_string(size - 1));
  }
  std::vector<Rational> x(size);
  for (std::size_t m = 1; m < size; ++m) x[m] = Rational(c(m));
  const auto table = detail::partial_bell_table<Rational>(
      std::span<const Rational>(x), size,
      [](std::size_t n, std::size_t k) { return Rational(binomial(n, k)); });
  LowerMatrix out(size);
  for (std::size_t n = 0; n < size; ++n)
    for (std::size_t k = 0; k <= n; ++k) out(n, k) = table[n][k];
  return out;
}

TriMatrix matrix_from_connected_counts(const ConnectedCounts& c, std::size_t size) {
  if (size > 1 && (c.length() == 0 || c(1) != 1)) {
    throw DomainError("matrix_from_connected_counts: c_1 must equal 1 for a unitriangular matrix");
  }
  return TriMatrix(partial_bell_matrix(c, size));
}

std::map<int, std::uint64_t> oracle_equivalence(int n, const Limits& limits) {
  if (n > limits.max_equivalence_n) {
    throw ResourceError("oracle_equivalence: n = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(limits.max_equivalence_n));
  }
  std::map<int, std::uint64_t> out;
  for (const auto& p : enum_partitions(n, limits)) ++out[static_cast<int>(p.block_count())];
  return out;
}

std::map<int, std::uint64_t> oracle_idempotent(int n, const Limits& limits) {
  if (n < 1) {
    throw ValidationError("oracle_idempotent needs n >= 1");
  }
  if (n > limits.max_idempotent_n) {
    throw ResourceError("oracle_idempotent: n = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(limits.max_idempotent_n));
  }
  const auto un = static_cast<std::size_t>(n);
  std::vector<int> f(un, 0);
  std::vector<int> parent(un);
  std::map<int, std::uint64_t> out;
  while (true) {
    bool idempotent = true;
    for (std::size_t i = 0; i < un && idempotent; ++i) {
      idempotent = f[static_cast<std::size_t>(f[i])] == f[i];
    }
    if (idempotent) {
      std::iota(parent.begin(), parent.end(), 0);
      int components = n;
      for (std::size_t i = 0; i < un; ++i) {
        const int a = find_root(parent, static_cast<int>(i));
        const int b = find_root(parent, f[i]);
        if (a != b) {
          parent[static_cast<std::size_t>(a)] = b;
          --components;
        }
      }
      ++out[components];
    }
    // Next map in base-n counting order.
    std::size_t pos = 0;
    while (pos < un && ++f[pos] == n) f[pos++] = 0;
    if (pos == un) break;
  }
  return out;
}

}  // namespace combphys
