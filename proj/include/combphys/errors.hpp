#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace combphys {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An input violates a mathematical precondition (constant terms,
// unitriangularity, membership in the substitution group, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Binary series operation on operands of different truncation orders.
class OrderMismatch : public DomainError {
 public:
  OrderMismatch(std::size_t lhs, std::size_t rhs)
      : DomainError("series order mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

// Malformed structural input (bad partition, unpacked matrix, parse failure).
class ValidationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A configured enumeration guard would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Enumeration guards. Every enumerating operation takes one of these and
// refuses (with ResourceError) rather than running for hours.
struct Limits {
  int max_partition_n = 12;     // enum_partitions
  int max_pair_n = 8;           // enum_diagrams_with_mult (B_n^2 pairs)
  int max_mult_fast_n = 12;     // mult_fast (B_n partitions)
  int max_equivalence_n = 10;   // oracle_equivalence
  int max_idempotent_n = 7;     // oracle_idempotent (n^n scan)
  double exhaustive_budget = 1e10;  // r^(2n-3) for exhaustive_probability
};

}  // namespace combphys
