#include <doctest.h>

#include <random>

#include "combphys/errors.hpp"
#include "combphys/io.hpp"
#include "combphys/riordan.hpp"
#include "combphys/triangular.hpp"
#include "support/oracles.hpp"

using namespace combphys;

namespace {

RiordanPair stirling_pair(std::size_t order) {
  return RiordanPair(Series::one(order), Series::exponential(order).with(0, 0));
}

RiordanPair pascal_pair(std::size_t order) { return RiordanPair(Series::exponential(order), Series::variable(order)); }

// Stirling numbers of the second kind by their own recurrence.
BigInt stirling2(unsigned n, unsigned k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return BigInt(k) * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

}  // namespace

TEST_CASE("riordan pair validation") {
  CHECK_THROWS_AS(RiordanPair(Series::exponential(3).with(0, 2), Series::variable(3)), DomainError);
  CHECK_THROWS_AS(RiordanPair(Series::one(3), Series::exponential(3)), DomainError);
  CHECK_THROWS_AS(RiordanPair(Series::one(3), Series::variable(3).with(1, 2)), DomainError);
  CHECK_THROWS_AS(RiordanPair(Series::one(3), Series::variable(4)), OrderMismatch);
  CHECK_THROWS_AS(matrix_from_pair(pascal_pair(3), 5), DomainError);
}

TEST_CASE("matrix_from_pair") {
  CHECK(matrix_from_pair(RiordanPair(Series::one(5), Series::variable(5)), 6) == TriMatrix::identity(6));
  const TriMatrix st = matrix_from_pair(stirling_pair(5), 5);
  CHECK(st(4, 2) == Rational(7));
  CHECK(st(4, 2) == Rational(oracle::partitions_by_blocks(4).at(2)));
  const TriMatrix big = matrix_from_pair(stirling_pair(9), 10);
  for (unsigned n = 0; n < 10; ++n)
    for (unsigned k = 0; k <= n; ++k) CHECK(big(n, k) == Rational(stirling2(n, k)));

  const TriMatrix pa = matrix_from_pair(pascal_pair(4), 5);
  CHECK(pa(4, 2) == Rational(6));
  for (unsigned n = 0; n < 5; ++n)
    for (unsigned k = 0; k <= n; ++k) CHECK(pa(n, k) == Rational(oracle::binom(n, k)));
}

TEST_CASE("matrix acts as the transform on coefficient vectors") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = oracle::random_pair(rng, 6);
    const Series f = oracle::random_series(rng, 6, false);
    const TriMatrix m = matrix_from_pair(p, 7);
    const auto image = m.lower().apply(f.coeffs());
    CHECK(Series(image) == p.transform(f));
  }
}

TEST_CASE("pair_from_matrix") {
  const auto id = pair_from_matrix(TriMatrix::identity(5));
  CHECK(id.g() == Series::one(4));
  CHECK(id.phi() == Series::variable(4));
  CHECK(pair_from_matrix(matrix_from_pair(stirling_pair(7), 8)) == stirling_pair(7));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracle::random_pair(rng, 8);
    CHECK(pair_from_matrix(matrix_from_pair(p, 9)) == p);
  }
}

TEST_CASE("is_substitution_with_prefunction") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(1, 9);
  for (int trial = 0; trial < 50; ++trial) {
    LowerMatrix m = LowerMatrix::identity(3);
    m(1, 0) = entry(rng);
    m(2, 0) = entry(rng);
    m(2, 1) = entry(rng);
    CHECK(is_substitution_with_prefunction(TriMatrix(m)));
  }
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(is_substitution_with_prefunction(matrix_from_pair(oracle::random_pair(rng, 7), 8)));
  }
  LowerMatrix bad = LowerMatrix::identity(4);
  bad(3, 2) = 1;
  CHECK_FALSE(is_substitution_with_prefunction(TriMatrix(bad)));
  CHECK(is_substitution_with_prefunction(TriMatrix::identity(1)));
  CHECK(is_substitution_with_prefunction(TriMatrix::identity(2)));
}

TEST_CASE("tri_mul") {
  std::mt19937_64 rng(8);
  const auto a = matrix_from_pair(oracle::random_pair(rng, 5), 6);
  CHECK(tri_mul(a, TriMatrix::identity(6)) == a);
  const TriMatrix pa = matrix_from_pair(pascal_pair(6), 7);
  const TriMatrix sq = tri_mul(pa, pa);
  for (unsigned n = 0; n < 7; ++n)
    for (unsigned k = 0; k <= n; ++k) CHECK(sq(n, k) == Rational(BigInt(oracle::binom(n, k) * (BigInt(1) << (n - k)))));
  CHECK(sq == matrix_from_pair(RiordanPair(series_exp(Rational(2) * Series::variable(6)), Series::variable(6)), 7));
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = matrix_from_pair(oracle::random_pair(rng, 7), 8);
    const auto q = matrix_from_pair(oracle::random_pair(rng, 7), 8);
    CHECK(is_substitution_with_prefunction(tri_mul(p, q)));
  }
  CHECK_THROWS_AS(tri_mul(TriMatrix::identity(2), TriMatrix::identity(3)), DomainError);
}

TEST_CASE("tri_log and tri_exp") {
  CHECK(tri_log(TriMatrix::identity(5)).is_zero());
  const LowerMatrix lp = tri_log(matrix_from_pair(pascal_pair(3), 4));
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t k = 0; k < 4; ++k) CHECK(lp.at(n, k) == (k + 1 == n ? Rational(static_cast<long>(n)) : Rational(0)));
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = matrix_from_pair(oracle::random_pair(rng, 7), 8);
    CHECK(tri_exp(tri_log(m)) == m);
  }
  CHECK_THROWS_AS(tri_exp(LowerMatrix::identity(3)), DomainError);
  CHECK_THROWS_AS(TriMatrix(LowerMatrix(3)), DomainError);
}

TEST_CASE("fractional_power") {
  std::mt19937_64 rng(34);
  const auto m = matrix_from_pair(oracle::random_pair(rng, 5), 6);
  CHECK(fractional_power(m, 0) == TriMatrix::identity(6));
  CHECK(fractional_power(m, 1) == m);

  const Rational half(1, 2);
  const TriMatrix ph = fractional_power(matrix_from_pair(pascal_pair(4), 5), half);
  for (unsigned n = 0; n < 5; ++n)
    for (unsigned k = 0; k <= n; ++k) CHECK(ph(n, k) == Rational(oracle::binom(n, k)) * pow(half, n - k));

  const TriMatrix st = matrix_from_pair(stirling_pair(7), 8);
  const TriMatrix root = fractional_power(st, half);
  CHECK(tri_mul(root, root) == st);
  CHECK(tri_mul(fractional_power(m, Rational(1, 3)), fractional_power(m, Rational(2, 3))) == m);
  CHECK(tri_mul(fractional_power(m, -1), m) == TriMatrix::identity(6));
}

TEST_CASE("leading submatrix equals the smaller truncation") {
  std::mt19937_64 rng(55);
  const auto p = oracle::random_pair(rng, 7);
  CHECK(matrix_from_pair(p, 8).leading(5) == matrix_from_pair(p, 5));
  CHECK(fractional_power(matrix_from_pair(p, 8), Rational(1, 2)).leading(4) ==
        fractional_power(matrix_from_pair(p, 4), Rational(1, 2)));
}

TEST_CASE("matrix json roundtrip") {
  const TriMatrix st = matrix_from_pair(stirling_pair(4), 5);
  const auto j = matrix_to_json(st.lower());
  CHECK(j.at("rows")[4][2] == "7");
  CHECK(tri_matrix_from_json(j) == st);
  CHECK_THROWS_AS(tri_matrix_from_json(nlohmann::json{{"size", 2}, {"rows", {nlohmann::json::array()}}}),
                  ValidationError);
}
