#include <doctest.h>

#include <random>

#include "combphys/errors.hpp"
#include "combphys/io.hpp"
#include "combphys/series.hpp"
#include "support/oracles.hpp"

using combphys::Rational;
using combphys::Series;

namespace {

Series S(std::initializer_list<long> xs) {
  std::vector<Rational> a;
  for (long x : xs) a.emplace_back(x);
  return Series(std::move(a));
}

}  // namespace

TEST_CASE("rational is always in lowest terms") {
  CHECK(Rational(6, -4).str() == "-3/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational::parse(" 10/4 ") == Rational(5, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("+3/9").str() == "1/3");
  CHECK_THROWS_AS(Rational::parse("1/0"), combphys::DomainError);
  CHECK_THROWS_AS(Rational::parse("1.5"), combphys::ValidationError);
  CHECK_THROWS_AS(Rational::parse(""), combphys::ValidationError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), combphys::DomainError);
  CHECK(Rational(1, 3).decimal(4) == "0.3333");
  CHECK(Rational(-2, 3).decimal(2) == "-0.67");
  CHECK(Rational(1, 200).decimal(2) == "0.01");
  CHECK(combphys::pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("series_add") {
  CHECK(S({1, 1, 0}) + S({0, 0, 2}) == S({1, 1, 2}));
  const Series f = S({3, -1, 4, 1});
  CHECK(f + Series::zero(3) == f);
  CHECK(S({1, -1}) + S({-1, 1}) == S({0, 0}));
  CHECK_THROWS_AS(S({1, 2}) + S({1, 2, 3}), combphys::OrderMismatch);
}

TEST_CASE("series_mul") {
  CHECK(S({1, 1, 0, 0}) * S({1, 1, 0, 0}) == S({1, 2, 2, 0}));
  const Series f = S({2, -3, 5, 7, 1});
  CHECK(f * Series::one(4) == f);
  // exp * exp: every a_n = 2^n, checked against a direct binomial convolution.
  const std::size_t order = 10;
  const Series e2 = Series::exponential(order) * Series::exponential(order);
  for (std::size_t n = 0; n <= order; ++n) {
    combphys::BigInt direct = 0;
    for (unsigned k = 0; k <= n; ++k) direct += oracle::binom(static_cast<unsigned>(n), k);
    CHECK(e2[n] == Rational(direct));
    CHECK(e2[n] == Rational(1L << n));
  }
  CHECK_THROWS_AS(S({1}) * S({1, 1}), combphys::OrderMismatch);
}

TEST_CASE("series_compose") {
  const Series f = S({1, 4, -2, 3, 5});
  CHECK(compose(f, Series::variable(4)) == f);
  const Series phi = S({0, 1, 3, -1, 2});
  CHECK(compose(Series::variable(4), phi) == phi);

  // exp o (e^z - 1) gives the Bell numbers; compare with an independent count.
  const std::size_t order = 9;
  const Series bell = compose(Series::exponential(order), Series::exponential(order).with(0, 0));
  const std::vector<long> frozen{1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147};
  for (std::size_t n = 0; n <= order; ++n) {
    CHECK(bell[n] == Rational(frozen[n]));
    if (n >= 1) CHECK(bell[n] == Rational(oracle::count_partitions(static_cast<int>(n))));
  }
  CHECK_THROWS_AS(compose(f, S({1, 1, 0, 0, 0})), combphys::DomainError);
}

TEST_CASE("series_exp and series_log") {
  CHECK(series_exp(Series::variable(6)) == Series::exponential(6));
  // exp(z^2/2!) counts involutions.
  const std::size_t order = 8;
  const Series inv = series_exp(Series::zero(order).with(2, 1));
  const std::vector<long> frozen{1, 1, 2, 4, 10, 26, 76, 232, 764};
  // a_n here counts involutions built only from 2-cycles: (1,0,1,0,3,0,15,0,105).
  const std::vector<long> perfect{1, 0, 1, 0, 3, 0, 15, 0, 105};
  for (std::size_t n = 0; n <= order; ++n) CHECK(inv[n] == Rational(perfect[n]));
  // Full involution count: exp(z + z^2/2).
  const Series all_inv = series_exp(Series::zero(order).with(1, 1).with(2, 1));
  for (std::size_t n = 0; n <= order; ++n) {
    CHECK(all_inv[n] == Rational(frozen[n]));
    if (n >= 1) CHECK(all_inv[n] == Rational(oracle::count_involutions(static_cast<int>(n))));
  }

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Series f = oracle::random_series(rng, 8, true);
    CHECK(series_log(series_exp(f)) == f);
    const Series g = oracle::random_series(rng, 8, false).with(0, 1);
    CHECK(series_exp(series_log(g)) == g);
  }
  CHECK_THROWS_AS(series_exp(S({1, 1})), combphys::DomainError);
  CHECK_THROWS_AS(series_log(S({2, 1})), combphys::DomainError);
}

TEST_CASE("hadamard_exp") {
  CHECK(hadamard(Series::exponential(5), Series::exponential(5)) == Series::exponential(5));
  const Series f = S({3, 1, 4, 1, 5, 9});
  CHECK(hadamard(f, Series::exponential(5)) == f);
  CHECK(hadamard(S({1, 2, 4}), S({1, 3, 9})) == S({1, 6, 36}));
  CHECK_THROWS_AS(hadamard(S({1}), S({1, 2})), combphys::OrderMismatch);
}

TEST_CASE("algebraic laws on random series") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 15; ++trial) {
    const Series a = oracle::random_series(rng, 8, false);
    const Series b = oracle::random_series(rng, 8, false);
    const Series c = oracle::random_series(rng, 8, false);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(hadamard(a, b) == hadamard(b, a));
    CHECK(hadamard(hadamard(a, b), c) == hadamard(a, hadamard(b, c)));
    const Series phi = oracle::random_series(rng, 8, true);
    const Series psi = oracle::random_series(rng, 8, true);
    CHECK(compose(compose(a, phi), psi) == compose(a, compose(phi, psi)));
  }
}

TEST_CASE("taylor conversion is a bijection") {
  const Series f = S({5, -3, 8, 12, 48});
  const auto t = f.taylor_coeffs();
  CHECK(t[2] == Rational(4));
  CHECK(t[4] == Rational(2));
  CHECK(Series::from_taylor(t) == f);
}

TEST_CASE("series json roundtrip") {
  const Series f(std::vector<Rational>{Rational(1), Rational(-1, 2), Rational(7, 3)});
  const auto j = combphys::series_to_json(f);
  CHECK(j.at("order") == 2);
  CHECK(j.at("egf_coeffs")[1] == "-1/2");
  CHECK(combphys::series_from_json(j) == f);
  CHECK_THROWS_AS(combphys::series_from_json(nlohmann::json{{"order", 3}, {"egf_coeffs", {"1"}}}),
                  combphys::ValidationError);
}

TEST_CASE("series catalog") {
  CHECK(combphys::parse_series("exp-1", 3) == S({0, 1, 1, 1}));
  CHECK(combphys::parse_series("z*exp", 4) == S({0, 1, 2, 3, 4}));
  CHECK(combphys::parse_series("1,1/2", 3) == Series(std::vector<Rational>{1, Rational(1, 2), 0, 0}));
  CHECK(combphys::parse_series("z", 2) == S({0, 1, 0}));
}
