#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "topotype/arith.hpp"
#include "topotype/partition.hpp"
#include "topotype/residue.hpp"

namespace topotype {

/// Limits on brute-force work. Enumeration is refused (GuardExceeded) when the
/// number of candidate multisets or matrices, or the estimated canonicalization
/// work, exceeds these.
struct FeasibilityGuard {
  BigInt max_multisets = 10'000'000;
  BigInt max_steps = BigInt("10000000000");
  BigInt max_matrices = 10'000'000;

  /// Defaults, with max_steps taken from TOPOTYPE_GUARD_STEPS when set.
  static FeasibilityGuard from_env();
};

struct FpVector {
  std::vector<int> coords;

  auto operator<=>(const FpVector&) const = default;
};

/// Multiset of nonzero columns with zero row sums and full rank, sorted.
struct GeneratingColumnSet {
  std::vector<FpVector> columns;

  bool operator==(const GeneratingColumnSet&) const = default;
};

/// F_p^k with vectors numbered so that index order is lexicographic
/// coordinate order; index 0 is the zero vector.
class ColumnSpace {
 public:
  using Index = std::uint16_t;

  ColumnSpace(long p, int k);

  long p() const { return p_; }
  int k() const { return k_; }
  int size() const { return size_; }

  Index encode(const FpVector& v) const;
  FpVector decode(Index index) const;
  Index add(Index a, Index b) const;
  Index negate(Index a) const;
  Index scale(Index a, long c) const;

 private:
  long p_;
  int k_;
  int size_;
};

/// GL_k(F_p) acting on column indices; element 0 is the identity.
class LinearGroup {
 public:
  using Index = ColumnSpace::Index;

  struct Canonical {
    std::vector<Index> form;
    std::size_t witness = 0;  // group element mapping the input to form
  };

  explicit LinearGroup(const ColumnSpace& space);

  std::size_t order() const { return images_.size() / stride_; }
  std::span<const Index> action(std::size_t g) const { return {images_.data() + g * stride_, stride_}; }

  /// Sorted image of a multiset under element g.
  std::vector<Index> image(std::size_t g, std::span<const Index> multiset) const;

  /// Least sorted image over the whole group.
  Canonical canonical(std::span<const Index> multiset) const;
  bool is_canonical(std::span<const Index> multiset) const;

 private:
  std::size_t stride_;
  std::vector<Index> images_;
};

BigInt group_order(long p, int k);

/// multichoose(R, p^k - 1): the raw multiset count before filtering.
BigInt candidate_multisets(long p, int k, int R);

/// Throws GuardExceeded when (p, k, R) is outside the guard.
void require_feasible(long p, int k, int R, const FeasibilityGuard& guard);

/// Calls `visit` with every generating multiset (sorted column indices) in
/// lexicographic order.
void for_each_generating_set(const ColumnSpace& space, int R, const FeasibilityGuard& guard,
                             const std::function<void(std::span<const ColumnSpace::Index>)>& visit);

std::vector<GeneratingColumnSet> enumerate_generating_sets(long p, int k, int R, const FeasibilityGuard& guard = {});

/// Partition type: sizes of the groups of columns spanning the same cyclic subgroup.
PartitionType classify_partition(const GeneratingColumnSet& columns, long p);

struct OrbitTable {
  std::map<PartitionType, BigInt> by_partition;
  BigInt total = 0;
  BigInt generating_sets = 0;  // multisets enumerated before taking orbits
  std::vector<GeneratingColumnSet> representatives;  // filled on request, lexicographic order
};

struct OrbitOptions {
  FeasibilityGuard guard;
  unsigned workers = 0;  // 0 = hardware concurrency
  bool keep_representatives = false;
};

OrbitTable count_orbits(long p, int k, int R, const OrbitOptions& options = {});

/// Orbits of F_p^* on R-multisets of nonzero residues with zero sum.
BigInt rank1_orbit_count(long p, int R, const FeasibilityGuard& guard = {});

/// Literal enumeration of every matrix with the given row sums, bucketed by
/// weighted-sum residue.
Distribution distribution_bruteforce(std::span<const int> parts, std::span<const long> weights, long p,
                                     ColumnRange range, const FeasibilityGuard& guard = {});

/// One multiset per line, columns written as "(x,y)" separated by spaces.
void write_representatives(std::ostream& out, const OrbitTable& table);

}  // namespace topotype
