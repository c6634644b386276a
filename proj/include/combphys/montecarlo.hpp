#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "combphys/errors.hpp"
#include "combphys/rational.hpp"
#include "combphys/rng.hpp"
#include "combphys/triangular.hpp"

namespace combphys {

// Entry distribution for random unipotent matrices: uniform on [1..r], or
// on [0..r-1] when zero_based is set (sensitivity runs only).
struct EntryRange {
  std::uint64_t r = 10;
  bool zero_based = false;

  std::uint64_t lo() const { return zero_based ? 0 : 1; }
  std::uint64_t hi() const { return zero_based ? r - 1 : r; }
  bool contains(const Rational& x) const;
};

// Strictly-lower entries of an integer unitriangular matrix, row-major:
// (1,0), (2,0), (2,1), (3,0), ...
struct IntUnipotent {
  std::size_t size;
  std::vector<std::int64_t> below;

  std::int64_t at(std::size_t i, std::size_t j) const { return below[i * (i - 1) / 2 + j]; }
  TriMatrix to_matrix() const;
};

IntUnipotent sample_unipotent_int(std::size_t n, const EntryRange& range, SplitMix64& stream);
TriMatrix sample_unipotent(std::size_t n, const EntryRange& range, SplitMix64& stream);

// Membership in the substitution-with-prefunction variety. The free
// parameters are the 2n-3 strictly-lower entries of columns 0 and 1; every
// other strictly-lower entry is determined by them.
bool exact_test(const TriMatrix& m);
bool exact_test(const IntUnipotent& m);

// Candidate definition of an approximate substitution: with (g, phi) read
// off columns 0 and 1 and P the matrix they induce, accept iff for all
// k >= 2, n > k:  |M[n,k] - P[n,k]| <= eps * max(1, |P[n,k]|).
// eps = 0 is exact_test.
bool tolerance_test(const TriMatrix& m, const Rational& eps);

// Least eps for which tolerance_test accepts m (0 for members).
Rational critical_epsilon(const TriMatrix& m);

enum class TestMode { exact, tolerance };

struct ExperimentSpec {
  std::size_t size = 4;
  EntryRange range{};
  std::uint64_t drawings = 275;
  std::uint64_t seed = 0;
  TestMode mode = TestMode::exact;
  Rational eps{};
  unsigned workers = 1;
};

struct ExperimentResult {
  std::uint64_t hits = 0;
  std::uint64_t drawings = 0;
  Rational estimate;
  std::pair<Rational, Rational> wilson95;
  Rational bound;
  double elapsed_ms = 0;

  // Equality of everything except wall-clock time.
  bool same_outcome(const ExperimentResult& o) const {
    return hits == o.hits && drawings == o.drawings && estimate == o.estimate && wilson95 == o.wilson95 &&
           bound == o.bound;
  }
};

// Wilson score interval at 95% (z = 1.96), endpoints rounded outward to
// multiples of 1e-12.
std::pair<Rational, Rational> wilson95(std::uint64_t hits, std::uint64_t trials);
// Same interval for an arbitrary observed proportion, e.g. an exact
// probability standing in for the sample mean.
std::pair<Rational, Rational> wilson95(const Rational& proportion, std::uint64_t trials);

ExperimentResult run_experiment(const ExperimentSpec& spec);

// r^{2n-3} / r^{n(n-1)/2}
Rational bound(std::size_t n, std::uint64_t r);

// Exact probability that a uniform random unipotent matrix is a
// substitution with prefunction: (number of parameter choices whose induced
// entries all fall in the range) / r^{n(n-1)/2}. Throws ResourceError when
// r^{2n-3} exceeds limits.exhaustive_budget.
Rational exhaustive_probability(std::size_t n, const EntryRange& range, const Limits& limits = {});

// Reference scan: every one of the r^{2n-3} parameter choices, each turned
// into a matrix by matrix_from_pair. Slow; for cross-checking.
Rational exhaustive_probability_scan(std::size_t n, const EntryRange& range, const Limits& limits = {});

struct ConjectureRow {
  std::size_t n;
  std::uint64_t r;
  Rational p_exact;
  Rational bound;
  Rational ratio;  // p_exact / bound
};

std::vector<ConjectureRow> conjecture_table(std::span<const std::size_t> ns, std::span<const std::uint64_t> rs,
                                            const Limits& limits = {});

// Critical epsilons of every draw of a seeded run, sorted ascending. The
// acceptance rate of tolerance_test at eps is the fraction <= eps.
struct ToleranceProfile {
  std::vector<Rational> critical;

  Rational acceptance(const Rational& eps) const;
  // Least eps reaching at least the target acceptance rate; nullopt if
  // target > 1.
  std::optional<Rational> epsilon_for(const Rational& target) const;
};

ToleranceProfile tolerance_profile(const ExperimentSpec& spec);

}  // namespace combphys
