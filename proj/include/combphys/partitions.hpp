#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "combphys/errors.hpp"
#include "combphys/rational.hpp"

namespace combphys {

// Unordered set partition of {1..n}. Storage is canonical (blocks sorted
// ascending, blocks ordered by least element) so that equality is
// structural; the order of blocks carries no meaning.
class SetPartition {
 public:
  // Validates coverage and disjointness, then canonicalizes.
  SetPartition(int ground_size, std::vector<std::vector<int>> blocks);

  // labels[i] is the block index of element i+1 (a restricted growth
  // string when it comes from enumeration, but any labelling is accepted).
  static SetPartition from_labels(std::span<const int> labels);

  int ground_size() const { return ground_size_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::vector<int> block_sizes() const;
  // Restricted growth string of the canonical storage (0-based block ids).
  std::vector<int> labels() const;

  std::string str() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  int ground_size_;
  std::vector<std::vector<int>> blocks_;
};

// Finitely supported multi-index k -> alpha_k (no zero entries stored).
class MultiIndex {
 public:
  MultiIndex() = default;
  static MultiIndex from_parts(std::span<const int> parts);

  void add(int k, int times = 1);
  int operator[](int k) const;
  const std::map<int, int>& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }

  // |alpha| = sum_k k * alpha_k
  int weight() const;
  // sum_k alpha_k
  int length() const;

  // "1^2 3^1"; the empty multi-index renders as "".
  std::string str() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::map<int, int> counts_;
};

// Visit every partition of {1..n} as a restricted growth string, in
// lexicographic RGS order. No guard; callers enforce their own limits.
void for_each_rgs(int n, const std::function<void(std::span<const int>)>& visit);

std::vector<SetPartition> enum_partitions(int n, const Limits& limits = {});

MultiIndex partition_type(const SetPartition& p);

// Order of the stabilizer in S_n of any partition of the given type:
//   prod_k (k!)^{alpha_k} alpha_k!
BigInt stab_order(const MultiIndex& type);

// A fixed partition of type t: blocks of consecutive integers, largest
// blocks first.
SetPartition partition_of_type(const MultiIndex& type);

std::uint64_t bell_number(int n);

}  // namespace combphys
