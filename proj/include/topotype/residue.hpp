#pragma once

#include <span>
#include <vector>

#include "topotype/arith.hpp"

namespace topotype {

/// Row-choice counts for a single part P over an odd prime p:
/// e = binomial(P+p-1, P) rows over columns 0..p-1, b = binomial(P+p-2, P)
/// rows whose first column is zero.
struct RowCounts {
  BigInt e;
  BigInt b;
};

RowCounts row_counts(int part, long p);

/// Number of zero-first-column completions whose weighted sum lands in the
/// zero residue class (W) and in each fixed nonzero class (Z).
struct PartWZ {
  BigInt W;
  BigInt Z;

  bool operator==(const PartWZ&) const = default;
};

/// (W, Z) for a single part; part 0 gives (1, 0).
PartWZ part_wz(int part, long p);

/// (W, Z) for a block of parts whose weighted sums add up.
PartWZ block_wz(std::span<const int> parts, long p);

/// Product of b_P over the parts.
BigInt block_row_product(std::span<const int> parts, long p);

enum class ColumnRange {
  kFull,       // columns j = 0..p-1
  kZeroFirst,  // column 0 forced to zero, so j = 1..p-1
};

/// Counts of matrices by weighted-sum residue class, indexed 0..p-1.
struct Distribution {
  std::vector<BigInt> counts;

  BigInt total() const;
  bool operator==(const Distribution&) const = default;
};

/// Exact distribution of sum_i w_i sum_j j a_ij mod p over nonnegative
/// integer matrices with row i summing to parts[i].
Distribution full_distribution(std::span<const int> parts, std::span<const long> weights, long p, ColumnRange range);

}  // namespace topotype
