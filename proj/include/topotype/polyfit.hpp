#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "topotype/arith.hpp"
#include "topotype/partition.hpp"

namespace topotype {

/// Interpolant for one residue class of p modulo the stratification modulus.
struct PolynomialBranch {
  long residue = 0;
  RationalPolynomial poly;
  std::vector<long> fit_primes;
  std::vector<long> check_primes;  // held out, never used for fitting
  bool consistent = true;          // poly reproduces every held-out value
};

/// A count that is polynomial in p on each residue class modulo `modulus`.
struct StratifiedPolynomial {
  long modulus = 1;
  int degree_bound = 0;
  std::map<long, PolynomialBranch> branches;
  std::vector<long> skipped_primes;  // supplied but ineligible for this partition

  bool consistent() const;
  /// Branch for the class of p; throws std::out_of_range if there is none.
  const PolynomialBranch& branch_for(long p) const;
  /// "not polynomial at this modulus/degree" for failed fits, else empty.
  std::string failure() const;
};

using CountFunction = std::function<BigInt(long p)>;

/// Interpolates `count` on every residue class mod `modulus` that is coprime
/// to it: the first degree_bound+1 primes of a class are fitted, the rest are
/// held out. A class with only degree_bound+1 primes gets the next prime in
/// that class as its held-out check.
StratifiedPolynomial fit_polynomial(const CountFunction& count, int degree_bound, long modulus,
                                    std::span<const long> primes);

/// Rank-2 topological types for `partition` as a stratified polynomial in p.
/// Primes at or below 3, or at or below the largest part, or with fewer than
/// n-1 are not sampled (recorded in skipped_primes); primes <= 3 are an error.
StratifiedPolynomial fit_partition_polynomial(const PartitionType& partition, int degree_bound, long modulus,
                                              std::span<const long> primes);

/// R - 3 + max(0, n - 3): the degree every tabulated row attains or stays under.
int default_degree_bound(const PartitionType& partition);

/// 2 * lcm(1..largest part).
long default_modulus(const PartitionType& partition);

/// Smallest divisor of the modulus under which the branches still agree.
StratifiedPolynomial reduce_modulus(const StratifiedPolynomial& fit);

/// Rank-2 count, or 0 when the partition is not admissible at p.
BigInt rank2_count_or_zero(const PartitionType& partition, long p);

struct TableRow {
  PartitionType partition;
  StratifiedPolynomial fit;
  std::vector<std::pair<long, BigInt>> counts;  // at the requested primes
};

struct Table {
  int R = 0;
  std::vector<long> primes;
  std::vector<TableRow> rows;
};

/// One row per partition of R admissible for large p. Each row is fitted at
/// default degree and modulus, extending the prime list as needed, and then
/// reduced to its smallest modulus.
Table build_table(int R, std::span<const long> primes);

enum class TableFormat { kPlain, kCsv, kJson };

std::string render_table(const Table& table, TableFormat format);
std::string render_table(int R, std::span<const long> primes, TableFormat format);

}  // namespace topotype
