#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topotype/arith.hpp"

namespace topotype {

/// Multiset of positive parts, kept in descending order. The partition type
/// of an action records how many branch points each nontrivial cyclic
/// subgroup accounts for.
class PartitionType {
 public:
  PartitionType() = default;
  explicit PartitionType(std::vector<int> parts);

  /// Accepts "2,2,1", exponent notation "1^4", or a mix such as "3,1^3".
  static PartitionType parse(std::string_view text);

  std::span<const int> parts() const { return parts_; }
  int total() const;
  int size() const { return static_cast<int>(parts_.size()); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int multiplicity(int part) const;

  /// Comma-separated parts, e.g. "2,1,1".
  std::string to_string() const;

  auto operator<=>(const PartitionType&) const = default;

 private:
  std::vector<int> parts_;
};

struct ActionParams {
  long p = 0;
  int k = 0;
  int R = 0;

  /// Throws std::invalid_argument unless p is prime, k >= 1 and R >= 3.
  void validate() const;
};

/// Genus from the Riemann-Hurwitz relation g - 1 = R p^(k-1) (p-1)/2 - p^k.
/// Throws std::domain_error when g <= 1 or g is not integral.
BigInt genus_of(const ActionParams& params);

/// Every partition of R, each in descending order, lexicographically ascending.
std::vector<PartitionType> all_partitions(int R);

/// Describes the first violated restriction, or nullopt when admissible.
std::optional<std::string> admissibility_violation(long p, int k, const PartitionType& partition);

/// Admissible partition types ordered by number of parts, then
/// lexicographically. For k = 1 this is the single part {R}.
std::vector<PartitionType> admissible_partitions(long p, int k, int R);

/// Number of normalized markings binomial(p-2, n-3); 1 for n in {2, 3}.
BigInt marking_count(long p, int n);

}  // namespace topotype
