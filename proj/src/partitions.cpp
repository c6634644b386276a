#include "combphys/partitions.hpp"

#include <algorithm>
#include <sstream>

namespace combphys {

SetPartition::SetPartition(int ground_size, std::vector<std::vector<int>> blocks)
    : ground_size_(ground_size), blocks_(std::move(blocks)) {
  if (ground_size_ < 1) {
    throw ValidationError("set partition needs a positive ground size");
  }
  std::vector<int> seen(static_cast<std::size_t>(ground_size_) + 1, 0);
  for (auto& block : blocks_) {
    if (block.empty()) {
      throw ValidationError("set partition has an empty block");
    }
    for (int x : block) {
      if (x < 1 || x > ground_size_) {
        throw ValidationError("element " + std::to_string(x) + " outside [1.." +
                              std::to_string(ground_size_) + "]");
      }
      if (seen[static_cast<std::size_t>(x)]++) {
        throw ValidationError("blocks are not disjoint at element " + std::to_string(x));
      }
    }
    std::sort(block.begin(), block.end());
  }
  for (int x = 1; x <= ground_size_; ++x) {
    if (!seen[static_cast<std::size_t>(x)]) {
      throw ValidationError("blocks do not cover element " + std::to_string(x));
    }
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

SetPartition SetPartition::from_labels(std::span<const int> labels) {
  std::map<int, std::vector<int>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_label[labels[i]].push_back(static_cast<int>(i) + 1);
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_label.size());
  for (auto& [label, block] : by_label) blocks.push_back(std::move(block));
  return SetPartition(static_cast<int>(labels.size()), std::move(blocks));
}

std::vector<int> SetPartition::block_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(blocks_.size());
  for (const auto& b : blocks_) sizes.push_back(static_cast<int>(b.size()));
  return sizes;
}

std::vector<int> SetPartition::labels() const {
  std::vector<int> out(static_cast<std::size_t>(ground_size_));
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (int x : blocks_[b]) out[static_cast<std::size_t>(x - 1)] = static_cast<int>(b);
  }
  return out;
}

std::string SetPartition::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) os << ',';
    os << '{';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i) os << ',';
      os << blocks_[b][i];
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

MultiIndex MultiIndex::from_parts(std::span<const int> parts) {
  MultiIndex m;
  for (int k : parts) m.add(k);
  return m;
}

void MultiIndex::add(int k, int times) {
  if (k < 1) {
    throw ValidationError("multi-index keys are positive integers");
  }
  if (times == 0) return;
  int& slot = counts_[k];
  slot += times;
  if (slot < 0) {
    throw ValidationError("negative multi-index entry");
  }
  if (slot == 0) counts_.erase(k);
}

int MultiIndex::operator[](int k) const {
  auto it = counts_.find(k);
  return it == counts_.end() ? 0 : it->second;
}

int MultiIndex::weight() const {
  int w = 0;
  for (auto [k, a] : counts_) w += k * a;
  return w;
}

int MultiIndex::length() const {
  int l = 0;
  for (auto [k, a] : counts_) l += a;
  return l;
}

std::string MultiIndex::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto [k, a] : counts_) {
    if (!first) os << ' ';
    first = false;
    os << k << '^' << a;
  }
  return os.str();
}

void for_each_rgs(int n, const std::function<void(std::span<const int>)>& visit) {
  if (n < 1) return;
  // a[i] <= 1 + max(a[0..i-1]); iterate in lexicographic order.
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(a);
    int i = n - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) {
      --i;
    }
    if (i == 0) return;
    ++a[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] =
        std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(i)];
    }
  }
}

std::vector<SetPartition> enum_partitions(int n, const Limits& limits) {
  if (n < 1) {
    throw ValidationError("enum_partitions needs n >= 1");
  }
  if (n > limits.max_partition_n) {
    throw ResourceError("enum_partitions: n = " + std::to_string(n) + " exceeds guard " +
                        std::to_string(limits.max_partition_n));
  }
  std::vector<SetPartition> out;
  out.reserve(bell_number(n));
  for_each_rgs(n, [&](std::span<const int> rgs) { out.push_back(SetPartition::from_labels(rgs)); });
  return out;
}

MultiIndex partition_type(const SetPartition& p) {
  const auto sizes = p.block_sizes();
  return MultiIndex::from_parts(sizes);
}

BigInt stab_order(const MultiIndex& type) {
  BigInt out = 1;
  for (auto [k, a] : type.counts()) {
    BigInt kf = factorial(static_cast<unsigned long>(k));
    BigInt kf_pow;
    mpz_pow_ui(kf_pow.get_mpz_t(), kf.get_mpz_t(), static_cast<unsigned long>(a));
    out *= kf_pow * factorial(static_cast<unsigned long>(a));
  }
  return out;
}

SetPartition partition_of_type(const MultiIndex& type) {
  std::vector<std::vector<int>> blocks;
  int next = 1;
  for (auto it = type.counts().rbegin(); it != type.counts().rend(); ++it) {
    for (int copy = 0; copy < it->second; ++copy) {
      std::vector<int> block;
      for (int i = 0; i < it->first; ++i) block.push_back(next++);
      blocks.push_back(std::move(block));
    }
  }
  return SetPartition(type.weight(), std::move(blocks));
}

std::uint64_t bell_number(int n) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace combphys
