#include <doctest.h>

#include <random>

#include "combphys/errors.hpp"
#include "combphys/riordan.hpp"
#include "combphys/vecfield.hpp"
#include "support/oracles.hpp"

using namespace combphys;

namespace {

TriMatrix pascal(std::size_t size) {
  return matrix_from_pair(RiordanPair(Series::exponential(size - 1), Series::variable(size - 1)), size);
}

TriMatrix stirling(std::size_t size) {
  return matrix_from_pair(RiordanPair(Series::one(size - 1), Series::exponential(size - 1).with(0, 0)), size);
}

TriMatrix z_exp(std::size_t size) {
  return matrix_from_pair(RiordanPair(Series::one(size - 1), times_variable(Series::exponential(size - 1))), size);
}

Rational max_abs(const LowerMatrix& m) {
  Rational best;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) best = std::max(best, abs(m(i, j)));
  return best;
}

}  // namespace

TEST_CASE("generator") {
  CHECK(generator(TriMatrix::identity(5)).is_zero());
  CHECK(generator(stirling(8)) == tri_log(stirling(8)));
  LowerMatrix bad = LowerMatrix::identity(4);
  bad(3, 2) = 1;
  CHECK_THROWS_AS(generator(TriMatrix(bad)), DomainError);
}

TEST_CASE("generator_probe converges to the log") {
  const TriMatrix p = pascal(6);
  const LowerMatrix log_p = tri_log(p);
  Rational previous = -1;
  for (std::uint64_t q : {10ULL, 100ULL, 1000ULL}) {
    const Rational err = max_abs(generator_probe(p, q) - log_p);
    CHECK(err > 0);
    if (previous > 0) CHECK(err * 9 <= previous);
    previous = err;
  }
  CHECK(generator_probe(p, 1) == p.lower() - LowerMatrix::identity(6));
  CHECK_THROWS_AS(generator_probe(p, 0), DomainError);
}

TEST_CASE("decompose_operator") {
  const auto pascal_op = decompose_operator(tri_log(pascal(6)));
  CHECK(pascal_op.q == Series::zero(5));
  CHECK(pascal_op.v == Series::variable(5));

  const auto st = decompose_operator(tri_log(stirling(8)));
  CHECK(st.v == Series::zero(7));
  CHECK(st.q[0] == 0);
  CHECK(st.q[1] == 0);
  CHECK(st.q[2] == 1);

  const auto ze = decompose_operator(tri_log(z_exp(8)));
  CHECK(ze.v == Series::zero(7));
  CHECK(ze.q[0] == 0);
  CHECK(ze.q[1] == 0);

  LowerMatrix not_field(4);
  not_field(3, 0) = 1;
  not_field(3, 2) = 5;
  CHECK_THROWS_AS(decompose_operator(not_field), DomainError);
}

TEST_CASE("operator_matrix") {
  const LowerMatrix mult_z = operator_matrix({Series::zero(5), Series::variable(5)}, 6);
  for (std::size_t n = 0; n < 6; ++n)
    for (std::size_t k = 0; k < 6; ++k) CHECK(mult_z.at(n, k) == (k + 1 == n ? Rational(static_cast<long>(n)) : Rational(0)));
  CHECK(operator_matrix({Series::zero(5), Series::zero(5)}, 6).is_zero());

  const LowerMatrix l = tri_log(stirling(8));
  CHECK(operator_matrix(decompose_operator(l), 8) == l);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const LowerMatrix g = tri_log(matrix_from_pair(oracle::random_pair(rng, 7), 8));
    CHECK(operator_matrix(decompose_operator(g), 8) == g);
  }
  CHECK_THROWS_AS(operator_matrix({Series::variable(5), Series::zero(5)}, 6), DomainError);
  CHECK_THROWS_AS(operator_matrix({Series::zero(5), Series::zero(4)}, 5), OrderMismatch);
}

TEST_CASE("operator matrix acts as q f' + v f") {
  std::mt19937_64 rng(90);
  for (int trial = 0; trial < 10; ++trial) {
    const Series q = oracle::random_series(rng, 6, true).with(1, 0);
    const Series v = oracle::random_series(rng, 6, true);
    const Series f = oracle::random_series(rng, 6, false);
    // EGF derivative shifts coefficients down; the top one is unknown at this order.
    std::vector<Rational> df(7);
    for (std::size_t n = 0; n < 6; ++n) df[n] = f[n + 1];
    const Series expected = q * Series(df) + v * f;
    const auto image = operator_matrix({q, v}, 7).apply(f.coeffs());
    // q has no constant or linear term, so f' enters row n only through
    // f_{k} with k <= n: every row is exact despite the truncated derivative.
    CHECK(Series(image) == expected);
  }
}

TEST_CASE("vector_field_table") {
  for (const auto& row : vector_field_table(Series::variable(7), 8)) CHECK(row.egf == 0);
  const auto st = vector_field_table(Series::exponential(7).with(0, 0), 8);
  REQUIRE(st.size() == 8);
  CHECK(st[2].n == 2);
  CHECK(st[2].egf == 1);
  CHECK(st[2].taylor == Rational(1, 2));
  const auto ze = vector_field_table(times_variable(Series::exponential(7)), 8);
  for (const auto& row : ze) CHECK(row.taylor * Rational(factorial(row.n)) == row.egf);
  CHECK(ze[2].egf == 2);
}
