#include "combphys/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "combphys/detail/partial_bell.hpp"
#include "combphys/riordan.hpp"

namespace combphys {

namespace {

struct Overflow {};

// 128-bit integer that throws Overflow instead of wrapping.
struct Checked {
  __int128 v = 0;

  Checked() = default;
  Checked(long long x) : v(x) {}  // NOLINT(google-explicit-constructor)

  static Checked raw(__int128 x) {
    Checked c;
    c.v = x;
    return c;
  }
  friend Checked operator+(Checked a, Checked b) {
    __int128 r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return raw(r);
  }
  friend Checked operator-(Checked a, Checked b) {
    __int128 r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return raw(r);
  }
  friend Checked operator*(Checked a, Checked b) {
    __int128 r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return raw(r);
  }
};

bool in_range(const Checked& x, const EntryRange& range) {
  return x.v >= static_cast<__int128>(range.lo()) && x.v <= static_cast<__int128>(range.hi());
}

bool in_range(const Rational& x, const EntryRange& range) { return range.contains(x); }

template <typename Scalar>
std::vector<std::vector<Scalar>> pascal(std::size_t size) {
  std::vector<std::vector<Scalar>> c(size + 1);
  for (std::size_t n = 0; n <= size; ++n) {
    c[n].assign(n + 1, Scalar(1));
    for (std::size_t k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}

// Induced entry M[row,k] (k >= 2) of the matrix of (g, phi):
//   sum_{j=0}^{row-k} C(row,j) g_j B_{row-j,k}(phi)
template <typename Scalar>
Scalar induced_entry(std::size_t row, std::size_t k, const std::vector<Scalar>& g,
                     const std::vector<std::vector<Scalar>>& bell, const std::vector<std::vector<Scalar>>& binom) {
  Scalar acc(0);
  for (std::size_t j = 0; j + k <= row; ++j) acc = acc + binom[row][j] * g[j] * bell[row - j][k];
  return acc;
}

// phi_m from M[m,1] = sum_{j=1}^{m} C(m,j) phi_j g_{m-j}, g_0 = 1.
template <typename Scalar>
Scalar solve_phi(std::size_t m, const Scalar& column1, const std::vector<Scalar>& g, const std::vector<Scalar>& phi,
                 const std::vector<std::vector<Scalar>>& binom) {
  Scalar acc = column1;
  for (std::size_t j = 1; j < m; ++j) acc = acc - binom[m][j] * phi[j] * g[m - j];
  return acc;
}

std::optional<bool> exact_test_fast(const IntUnipotent& m) {
  const std::size_t n = m.size;
  try {
    const auto binom = pascal<Checked>(n);
    std::vector<Checked> g(n, Checked(0));
    std::vector<Checked> phi(n, Checked(0));
    g[0] = 1;
    if (n > 1) phi[1] = 1;
    for (std::size_t i = 1; i < n; ++i) g[i] = m.at(i, 0);
    for (std::size_t i = 2; i < n; ++i) phi[i] = solve_phi<Checked>(i, Checked(m.at(i, 1)), g, phi, binom);
    const auto bell = detail::partial_bell_table<Checked>(
        std::span<const Checked>(phi), n, [&](std::size_t a, std::size_t b) { return binom[a][b]; });
    for (std::size_t i = 3; i < n; ++i) {
      for (std::size_t k = 2; k < i; ++k) {
        if (induced_entry<Checked>(i, k, g, bell, binom).v != m.at(i, k)) return false;
      }
    }
    return true;
  } catch (const Overflow&) {
    return std::nullopt;
  }
}

// Counts parameter choices (columns 0 and 1) whose induced entries all lie
// in the range. Rows are filled top-down; the induced entries of row m+1
// depend only on g_0..g_{m-1} and phi_1..phi_m, so they are checked as soon
// as row m is chosen and failing prefixes are cut. The parameters of the
// last row induce nothing and contribute a factor R^2.
template <typename Scalar>
class ParameterCounter {
 public:
  ParameterCounter(std::size_t n, const EntryRange& range)
      : n_(n), range_(range), binom_(pascal<Scalar>(n)), g_(n, Scalar(0)), phi_(n, Scalar(0)) {
    g_[0] = Scalar(1);
    if (n > 1) phi_[1] = Scalar(1);
  }

  std::uint64_t count() { return n_ < 2 ? 1 : from_row(1); }

 private:
  bool row_ok(std::size_t row) const {
    if (row < 3) return true;
    const auto bell = detail::partial_bell_table<Scalar>(
        std::span<const Scalar>(phi_.data(), row), row + 1,
        [&](std::size_t a, std::size_t b) { return binom_[a][b]; });
    for (std::size_t k = 2; k < row; ++k) {
      if (!in_range(induced_entry<Scalar>(row, k, g_, bell, binom_), range_)) return false;
    }
    return true;
  }

  std::uint64_t from_row(std::size_t m) {
    const std::uint64_t r = range_.hi() - range_.lo() + 1;
    if (m == n_ - 1) return m == 1 ? r : r * r;
    std::uint64_t total = 0;
    for (std::uint64_t gv = range_.lo(); gv <= range_.hi(); ++gv) {
      g_[m] = Scalar(static_cast<long long>(gv));
      if (m == 1) {
        if (row_ok(2)) total += from_row(2);
        continue;
      }
      for (std::uint64_t pv = range_.lo(); pv <= range_.hi(); ++pv) {
        phi_[m] = solve_phi<Scalar>(m, Scalar(static_cast<long long>(pv)), g_, phi_, binom_);
        if (row_ok(m + 1)) total += from_row(m + 1);
      }
    }
    return total;
  }

  std::size_t n_;
  EntryRange range_;
  std::vector<std::vector<Scalar>> binom_;
  std::vector<Scalar> g_;
  std::vector<Scalar> phi_;
};

void check_range(const EntryRange& range) {
  if (range.r < 1) {
    throw ValidationError("range r must be >= 1");
  }
}

void check_budget(std::size_t n, const EntryRange& range, const Limits& limits) {
  check_range(range);
  if (n < 2) {
    throw ValidationError("matrix size must be >= 2");
  }
  const double work = std::pow(static_cast<double>(range.r), static_cast<double>(2 * n - 3));
  if (work > limits.exhaustive_budget) {
    std::ostringstream msg;
    msg << "exhaustive scan of r^(2n-3) = " << work << " parameter choices exceeds budget " << limits.exhaustive_budget;
    throw ResourceError(msg.str());
  }
}

Rational total_matrices(std::size_t n, std::uint64_t r) {
  return pow(Rational(r), static_cast<long>(n * (n - 1) / 2));
}

Rational round_to_grid(long double x, bool up) {
  constexpr long double scale = 1e12L;
  const long double scaled = up ? std::ceil(x * scale) : std::floor(x * scale);
  return Rational(static_cast<long long>(scaled), static_cast<long long>(scale));
}

}  // namespace

bool EntryRange::contains(const Rational& x) const {
  return x.is_integer() && x >= Rational(lo()) && x <= Rational(hi());
}

TriMatrix IntUnipotent::to_matrix() const {
  LowerMatrix m = LowerMatrix::identity(size);
  for (std::size_t i = 1; i < size; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = Rational(at(i, j));
  return TriMatrix(std::move(m));
}

IntUnipotent sample_unipotent_int(std::size_t n, const EntryRange& range, SplitMix64& stream) {
  check_range(range);
  IntUnipotent m{n, std::vector<std::int64_t>(n * (n - 1) / 2)};
  for (auto& x : m.below) x = static_cast<std::int64_t>(stream.uniform(range.lo(), range.hi()));
  return m;
}

TriMatrix sample_unipotent(std::size_t n, const EntryRange& range, SplitMix64& stream) {
  return sample_unipotent_int(n, range, stream).to_matrix();
}

bool exact_test(const TriMatrix& m) { return is_substitution_with_prefunction(m); }

bool exact_test(const IntUnipotent& m) {
  if (auto fast = exact_test_fast(m)) return *fast;
  return exact_test(m.to_matrix());
}

bool tolerance_test(const TriMatrix& m, const Rational& eps) {
  if (eps.sign() < 0) {
    throw DomainError("tolerance must be non-negative");
  }
  const TriMatrix predicted = matrix_from_pair(pair_from_matrix(m), m.size());
  for (std::size_t n = 3; n < m.size(); ++n) {
    for (std::size_t k = 2; k < n; ++k) {
      const Rational scale = std::max(Rational(1), abs(predicted(n, k)));
      if (abs(m(n, k) - predicted(n, k)) > eps * scale) return false;
    }
  }
  return true;
}

Rational critical_epsilon(const TriMatrix& m) {
  const TriMatrix predicted = matrix_from_pair(pair_from_matrix(m), m.size());
  Rational worst;
  for (std::size_t n = 3; n < m.size(); ++n) {
    for (std::size_t k = 2; k < n; ++k) {
      const Rational scale = std::max(Rational(1), abs(predicted(n, k)));
      worst = std::max(worst, abs(m(n, k) - predicted(n, k)) / scale);
    }
  }
  return worst;
}

std::pair<Rational, Rational> wilson95(const Rational& proportion, std::uint64_t trials) {
  if (trials == 0 || proportion.sign() < 0 || proportion > 1) {
    throw DomainError("wilson95 needs 0 <= proportion <= 1 and trials > 0");
  }
  constexpr long double z = 1.96L;
  const auto n = static_cast<long double>(trials);
  const auto p = static_cast<long double>(proportion.to_double());
  const long double z2 = z * z;
  const long double denom = 1 + z2 / n;
  const long double center = (p + z2 / (2 * n)) / denom;
  const long double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  const long double low = std::max(0.0L, center - half);
  const long double high = std::min(1.0L, center + half);
  return {round_to_grid(low, false), round_to_grid(high, true)};
}

std::pair<Rational, Rational> wilson95(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0 || hits > trials) {
    throw DomainError("wilson95 needs 0 <= hits <= trials, trials > 0");
  }
  return wilson95(Rational(hits) / Rational(trials), trials);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  check_range(spec.range);
  if (spec.size < 2 || spec.drawings < 1) {
    throw ValidationError("experiment needs size >= 2 and drawings >= 1");
  }
  if (spec.mode == TestMode::tolerance && spec.eps.sign() < 0) {
    throw ValidationError("tolerance must be non-negative");
  }
  const auto start = std::chrono::steady_clock::now();
  const unsigned workers = static_cast<unsigned>(std::clamp<std::uint64_t>(spec.workers, 1, spec.drawings));

  auto count_chunk = [&spec](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      SplitMix64 stream = SplitMix64::stream(spec.seed, i);
      const IntUnipotent m = sample_unipotent_int(spec.size, spec.range, stream);
      const bool hit =
          spec.mode == TestMode::exact ? exact_test(m) : tolerance_test(m.to_matrix(), spec.eps);
      hits += hit ? 1 : 0;
    }
    return hits;
  };

  std::vector<std::uint64_t> partial(workers, 0);
  if (workers == 1) {
    partial[0] = count_chunk(0, spec.drawings);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = spec.drawings * w / workers;
      const std::uint64_t end = spec.drawings * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] { partial[w] = count_chunk(begin, end); });
    }
    for (auto& t : threads) t.join();
  }

  ExperimentResult result;
  for (auto h : partial) result.hits += h;
  result.drawings = spec.drawings;
  result.estimate = Rational(result.hits) / Rational(spec.drawings);
  result.wilson95 = wilson95(result.hits, spec.drawings);
  result.bound = bound(spec.size, spec.range.r);
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Rational bound(std::size_t n, std::uint64_t r) {
  if (n < 2 || r < 1) {
    throw ValidationError("bound needs n >= 2 and r >= 1");
  }
  const long free_params = static_cast<long>(2 * n - 3);
  const long all_entries = static_cast<long>(n * (n - 1) / 2);
  return pow(Rational(r), free_params - all_entries);
}

Rational exhaustive_probability(std::size_t n, const EntryRange& range, const Limits& limits) {
  check_budget(n, range, limits);
  std::uint64_t good = 0;
  try {
    good = ParameterCounter<Checked>(n, range).count();
  } catch (const Overflow&) {
    good = ParameterCounter<Rational>(n, range).count();
  }
  return Rational(good) / total_matrices(n, range.r);
}

Rational exhaustive_probability_scan(std::size_t n, const EntryRange& range, const Limits& limits) {
  check_budget(n, range, limits);
  const std::size_t free_params = 2 * n - 3;
  std::vector<std::uint64_t> params(free_params, range.lo());
  std::uint64_t good = 0;
  while (true) {
    // params: M[1,0], M[2,0], ..., M[n-1,0], then M[2,1], ..., M[n-1,1].
    LowerMatrix m = LowerMatrix::identity(n);
    for (std::size_t i = 1; i < n; ++i) m(i, 0) = Rational(params[i - 1]);
    for (std::size_t i = 2; i < n; ++i) m(i, 1) = Rational(params[n - 1 + i - 2]);
    const TriMatrix induced = matrix_from_pair(pair_from_matrix(TriMatrix(std::move(m))), n);
    bool ok = true;
    for (std::size_t i = 3; i < n && ok; ++i) {
      for (std::size_t k = 2; k < i && ok; ++k) ok = range.contains(induced(i, k));
    }
    good += ok ? 1 : 0;

    std::size_t pos = 0;
    while (pos < free_params && params[pos] == range.hi()) params[pos++] = range.lo();
    if (pos == free_params) break;
    ++params[pos];
  }
  return Rational(good) / total_matrices(n, range.r);
}

std::vector<ConjectureRow> conjecture_table(std::span<const std::size_t> ns, std::span<const std::uint64_t> rs,
                                            const Limits& limits) {
  std::vector<ConjectureRow> rows;
  for (std::size_t n : ns) {
    for (std::uint64_t r : rs) {
      const Rational p = exhaustive_probability(n, EntryRange{r, false}, limits);
      const Rational b = bound(n, r);
      rows.push_back({n, r, p, b, p / b});
    }
  }
  return rows;
}

Rational ToleranceProfile::acceptance(const Rational& eps) const {
  if (critical.empty()) return Rational();
  const auto accepted = std::upper_bound(critical.begin(), critical.end(), eps) - critical.begin();
  return Rational(static_cast<long>(accepted), static_cast<long>(critical.size()));
}

std::optional<Rational> ToleranceProfile::epsilon_for(const Rational& target) const {
  if (target > Rational(1) || critical.empty()) return std::nullopt;
  // Least count k with k / N >= target.
  const Rational needed = target * Rational(static_cast<long>(critical.size()));
  BigInt k = needed.numerator() / needed.denominator();
  if (Rational(k) < needed) k += 1;
  if (k <= 0) return Rational();
  return critical[k.get_ui() - 1];
}

ToleranceProfile tolerance_profile(const ExperimentSpec& spec) {
  check_range(spec.range);
  ToleranceProfile profile;
  profile.critical.reserve(spec.drawings);
  for (std::uint64_t i = 0; i < spec.drawings; ++i) {
    SplitMix64 stream = SplitMix64::stream(spec.seed, i);
    profile.critical.push_back(critical_epsilon(sample_unipotent(spec.size, spec.range, stream)));
  }
  std::sort(profile.critical.begin(), profile.critical.end());
  return profile;
}

}  // namespace combphys
