#include "combphys/diagrams.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace combphys {

namespace {

// Lexicographically least row-major flattening over all row and column
// permutations of a p x q matrix.
//
// Rows are placed one at a time. Once the first d rows are fixed, the
// columns are split into an ordered list of cells, each cell holding
// columns that agree on every placed row; inside a cell the remaining
// freedom is a column permutation. The best way to write the next row is
// therefore its values sorted ascending within each cell, so only rows
// achieving the least such contribution can be placed next. Ties branch;
// identical rows are interchangeable and are tried once. Branches whose
// prefix already exceeds the best complete matrix are cut.
class Canonicalizer {
 public:
  Canonicalizer(int p, int q, const std::vector<int>& a) : p_(p), q_(q), a_(a) {}

  std::vector<int> run() {
    std::vector<char> used(static_cast<std::size_t>(p_), 0);
    std::vector<int> all(static_cast<std::size_t>(q_));
    for (int j = 0; j < q_; ++j) all[static_cast<std::size_t>(j)] = j;
    prefix_.reserve(static_cast<std::size_t>(p_ * q_));
    search(used, {all}, 0);
    return best_;
  }

 private:
  int value(int row, int col) const { return a_[static_cast<std::size_t>(row * q_ + col)]; }

  void contribution(int row, const std::vector<std::vector<int>>& cells, std::vector<int>& out) const {
    out.clear();
    for (const auto& cell : cells) {
      const auto start = out.size();
      for (int c : cell) out.push_back(value(row, c));
      std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
    }
  }

  bool same_row(int r, int s) const {
    return std::equal(a_.begin() + r * q_, a_.begin() + (r + 1) * q_, a_.begin() + s * q_);
  }

  void search(std::vector<char>& used, const std::vector<std::vector<int>>& cells, int depth) {
    if (depth == p_) {
      if (best_.empty() || prefix_ < best_) best_ = prefix_;
      return;
    }
    std::vector<int> least;
    std::vector<int> candidates;
    std::vector<int> contrib;
    for (int r = 0; r < p_; ++r) {
      if (used[static_cast<std::size_t>(r)]) continue;
      contribution(r, cells, contrib);
      if (candidates.empty() || contrib < least) {
        least = contrib;
        candidates.assign(1, r);
      } else if (contrib == least) {
        const bool duplicate = std::any_of(candidates.begin(), candidates.end(),
                                           [&](int s) { return same_row(r, s); });
        if (!duplicate) candidates.push_back(r);
      }
    }

    const std::size_t offset = prefix_.size();
    prefix_.insert(prefix_.end(), least.begin(), least.end());
    if (!best_.empty() &&
        std::lexicographical_compare(best_.begin(), best_.begin() + static_cast<std::ptrdiff_t>(prefix_.size()),
                                     prefix_.begin(), prefix_.end())) {
      prefix_.resize(offset);
      return;
    }

    for (int r : candidates) {
      std::vector<std::vector<int>> refined;
      refined.reserve(cells.size());
      for (const auto& cell : cells) {
        std::vector<int> sorted = cell;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [&](int x, int y) { return value(r, x) < value(r, y); });
        std::size_t i = 0;
        while (i < sorted.size()) {
          std::size_t j = i;
          while (j < sorted.size() && value(r, sorted[j]) == value(r, sorted[i])) ++j;
          refined.emplace_back(sorted.begin() + static_cast<std::ptrdiff_t>(i),
                               sorted.begin() + static_cast<std::ptrdiff_t>(j));
          i = j;
        }
      }
      used[static_cast<std::size_t>(r)] = 1;
      search(used, refined, depth + 1);
      used[static_cast<std::size_t>(r)] = 0;
    }
    prefix_.resize(offset);
  }

  int p_;
  int q_;
  const std::vector<int>& a_;
  std::vector<int> prefix_;
  std::vector<int> best_;
};

struct LabelledPartition {
  std::vector<int> labels;
  int blocks;
};

std::vector<LabelledPartition> all_labelled(int n) {
  std::vector<LabelledPartition> out;
  for_each_rgs(n, [&](std::span<const int> rgs) {
    out.push_back({std::vector<int>(rgs.begin(), rgs.end()),
                   *std::max_element(rgs.begin(), rgs.end()) + 1});
  });
  return out;
}

std::vector<int> intersection_flat(const LabelledPartition& a, const LabelledPartition& b) {
  std::vector<int> m(static_cast<std::size_t>(a.blocks * b.blocks), 0);
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    ++m[static_cast<std::size_t>(a.labels[i] * b.blocks + b.labels[i])];
  }
  return m;
}

}  // namespace

IntMatrix Diagram::matrix() const {
  IntMatrix m(static_cast<std::size_t>(rows_), std::vector<int>(static_cast<std::size_t>(cols_)));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = at(i, j);
  return m;
}

int Diagram::lines() const {
  int s = 0;
  for (int v : canon_) s += v;
  return s;
}

std::string Diagram::flat_str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    if (i) os << '/';
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << at(i, j);
    }
  }
  return os.str();
}

IntMatrix intersection_matrix(const SetPartition& p1, const SetPartition& p2) {
  if (p1.ground_size() != p2.ground_size()) {
    throw ValidationError("intersection_matrix: ground sets differ (" + std::to_string(p1.ground_size()) +
                          " vs " + std::to_string(p2.ground_size()) + ")");
  }
  const auto l1 = p1.labels();
  const auto l2 = p2.labels();
  IntMatrix m(p1.block_count(), std::vector<int>(p2.block_count(), 0));
  for (std::size_t i = 0; i < l1.size(); ++i) {
    ++m[static_cast<std::size_t>(l1[i])][static_cast<std::size_t>(l2[i])];
  }
  return m;
}

Diagram canonical_class(const IntMatrix& m) {
  if (m.empty() || m.front().empty()) {
    throw ValidationError("canonical_class: empty matrix");
  }
  const int p = static_cast<int>(m.size());
  const int q = static_cast<int>(m.front().size());
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(p * q));
  std::vector<int> col_sums(static_cast<std::size_t>(q), 0);
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != q) {
      throw ValidationError("canonical_class: ragged matrix");
    }
    int row_sum = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] < 0) {
        throw ValidationError("canonical_class: negative entry");
      }
      row_sum += row[j];
      col_sums[j] += row[j];
      flat.push_back(row[j]);
    }
    if (row_sum == 0) {
      throw ValidationError("canonical_class: matrix is not packed (zero row)");
    }
  }
  if (std::find(col_sums.begin(), col_sums.end(), 0) != col_sums.end()) {
    throw ValidationError("canonical_class: matrix is not packed (zero column)");
  }
  return Diagram(p, q, Canonicalizer(p, q, flat).run());
}

SpotTypes spot_types(const Diagram& d) {
  SpotTypes t;
  for (int j = 0; j < d.cols(); ++j) {
    int s = 0;
    for (int i = 0; i < d.rows(); ++i) s += d.at(i, j);
    t.alpha.add(s);
  }
  for (int i = 0; i < d.rows(); ++i) {
    int s = 0;
    for (int j = 0; j < d.cols(); ++j) s += d.at(i, j);
    t.beta.add(s);
  }
  return t;
}

std::map<Diagram, std::uint64_t> enum_diagrams_with_mult(int n, const EnumOptions& options) {
  if (n < 1) {
    throw ValidationError("enum_diagrams_with_mult needs n >= 1");
  }
  if (n > options.limits.max_pair_n) {
    throw ResourceError("enum_diagrams_with_mult: n = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(options.limits.max_pair_n));
  }
  const auto parts = all_labelled(n);
  const unsigned workers = std::max(1u, options.workers);

  auto tally_shard = [&](unsigned shard, std::map<Diagram, std::uint64_t>& out) {
    for (std::size_t i = shard; i < parts.size(); i += workers) {
      for (const auto& p2 : parts) {
        auto flat = intersection_flat(parts[i], p2);
        IntMatrix m(static_cast<std::size_t>(parts[i].blocks));
        for (int r = 0; r < parts[i].blocks; ++r) {
          m[static_cast<std::size_t>(r)].assign(flat.begin() + r * p2.blocks, flat.begin() + (r + 1) * p2.blocks);
        }
        ++out[canonical_class(m)];
      }
    }
  };

  std::vector<std::map<Diagram, std::uint64_t>> partial(workers);
  if (workers == 1) {
    tally_shard(0, partial[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(tally_shard, w, std::ref(partial[w]));
    for (auto& t : threads) t.join();
  }
  std::map<Diagram, std::uint64_t> total = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) {
    for (const auto& [d, c] : partial[w]) total[d] += c;
  }
  return total;
}

std::uint64_t mult_fast(const Diagram& d, const Limits& limits) {
  const int n = d.lines();
  if (n > limits.max_mult_fast_n) {
    throw ResourceError("mult_fast: |d| = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(limits.max_mult_fast_n));
  }
  const SpotTypes types = spot_types(d);
  const SetPartition fixed = partition_of_type(types.beta);
  const LabelledPartition p1{fixed.labels(), static_cast<int>(fixed.block_count())};

  std::uint64_t fibre = 0;
  for_each_rgs(n, [&](std::span<const int> rgs) {
    const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    if (blocks != d.cols()) return;
    const LabelledPartition p2{std::vector<int>(rgs.begin(), rgs.end()), blocks};
    std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
    for (int label : p2.labels) ++sizes[static_cast<std::size_t>(label)];
    if (MultiIndex::from_parts(sizes) != types.alpha) return;
    auto flat = intersection_flat(p1, p2);
    IntMatrix m(static_cast<std::size_t>(p1.blocks));
    for (int r = 0; r < p1.blocks; ++r) {
      m[static_cast<std::size_t>(r)].assign(flat.begin() + r * blocks, flat.begin() + (r + 1) * blocks);
    }
    if (canonical_class(m) == d) ++fibre;
  });
  // Number of partitions of type beta(d).
  const BigInt orbit = factorial(static_cast<unsigned long>(n)) / stab_order(types.beta);
  return fibre * orbit.get_ui();
}

void TwoAlphabetPoly::add(const MultiIndex& l, const MultiIndex& v, std::int64_t coeff) {
  if (coeff == 0) return;
  auto key = Monomial{l, v};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

std::int64_t TwoAlphabetPoly::coeff(const MultiIndex& l, const MultiIndex& v) const {
  auto it = terms_.find(Monomial{l, v});
  return it == terms_.end() ? 0 : it->second;
}

Rational TwoAlphabetPoly::evaluate(std::span<const Rational> l_values,
                                   std::span<const Rational> v_values) const {
  auto power_product = [](const MultiIndex& m, std::span<const Rational> values) {
    Rational out = 1;
    for (auto [k, e] : m.counts()) {
      if (static_cast<std::size_t>(k) > values.size()) {
        throw ValidationError("evaluate: no value supplied for index " + std::to_string(k));
      }
      out *= pow(values[static_cast<std::size_t>(k - 1)], e);
    }
    return out;
  };
  Rational total;
  for (const auto& [mono, c] : terms_) {
    total += Rational(c) * power_product(mono.first, l_values) * power_product(mono.second, v_values);
  }
  return total;
}

std::string TwoAlphabetPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (auto [k, e] : mono.first.counts()) {
      os << "*L" << k;
      if (e != 1) os << '^' << e;
    }
    for (auto [k, e] : mono.second.counts()) {
      os << "*V" << k;
      if (e != 1) os << '^' << e;
    }
  }
  return first ? "0" : os.str();
}

TwoAlphabetPoly hadamard_via_diagrams(int n, const EnumOptions& options) {
  TwoAlphabetPoly poly;
  for (const auto& [d, mult] : enum_diagrams_with_mult(n, options)) {
    const SpotTypes t = spot_types(d);
    poly.add(t.alpha, t.beta, static_cast<std::int64_t>(mult));
  }
  return poly;
}

TwoAlphabetPoly hadamard_double_sum(int n, const Limits& limits) {
  if (n > limits.max_pair_n) {
    throw ResourceError("hadamard_double_sum: n = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(limits.max_pair_n));
  }
  const auto parts = enum_partitions(n, limits);
  std::vector<MultiIndex> types;
  types.reserve(parts.size());
  for (const auto& p : parts) types.push_back(partition_type(p));
  TwoAlphabetPoly poly;
  for (const auto& t1 : types) {
    for (const auto& t2 : types) poly.add(t1, t2, 1);
  }
  return poly;
}

}  // namespace combphys
