#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topotype/arith.hpp"
#include "topotype/partition.hpp"

namespace topotype {

/// One nontrivial subgroup of the central scalars in the Burnside sum.
struct BurnsideTerm {
  long divisor = 0;    // order d' of the subgroup
  BigInt contribution;  // phi(d') * number of fixed generating sets

  bool operator==(const BurnsideTerm&) const = default;
};

/// Audit trail of a topological-type count:
/// T = marking_multiplier * (card_A + sum of contributions) / (p - 1).
struct CountReport {
  PartitionType partition;
  long p = 0;
  int k = 0;
  BigInt card_A;
  std::vector<BurnsideTerm> burnside_terms;
  BigInt marking_multiplier;
  BigInt T;
  /// Set for p = 3, where the tabulated closed forms are not claimed and
  /// agreement rests on the brute-force oracle.
  bool oracle_validated_only = false;

  bool operator==(const CountReport&) const = default;
};

struct TotalReport {
  long p = 0;
  int k = 0;
  int R = 0;
  std::vector<CountReport> rows;
  BigInt total;

  bool operator==(const TotalReport&) const = default;
};

BigInt card_A_base2(int P1, int P2, long p);
BigInt card_A_base3(int P1, int P2, int P3, long p);

/// |A| via the two-part (even n) or three-part (odd n) basis followed by
/// the quadratic-form recursion, consuming parts from the back of `ordered`.
BigInt card_A_recursive(std::span<const int> ordered, long p);

/// prod b_P / p^2, available when at least two parts are not 0 or 1 mod p.
std::optional<BigInt> card_A_shortcut(std::span<const int> parts, long p);

/// |A(P)| with parts in canonical order; uses the shortcut when it applies.
BigInt card_A(const PartitionType& partition, long p);

/// |A(1^[n])| from the specialized unitary recursion.
BigInt card_A_unitary(int n, long p);

/// Burnside correction terms over 1 < d' | gcd(parts, p - 1).
std::vector<BurnsideTerm> burnside_terms(std::span<const int> parts, long p);

CountReport count_types_rank2(const PartitionType& partition, long p);
CountReport count_types_rank1(int R, long p);

/// Klein four-group: partitions of R into three parts of equal parity plus
/// partitions into two even parts.
BigInt count_types_klein(int R);

TotalReport total_types(long p, int k, int R);

}  // namespace topotype
