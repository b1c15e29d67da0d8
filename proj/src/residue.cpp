#include "topotype/residue.hpp"

#include <stdexcept>
#include <string>

#include "topotype/errors.hpp"

namespace topotype {

namespace {

void require_odd_prime(long p, const char* where) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument(std::string(where) + ": p must be an odd prime, got " + std::to_string(p));
}

long mod(long a, long p) { return ((a % p) + p) % p; }

// profile[r] = number of rows (multisets of `part` columns drawn from the
// allowed range) whose unweighted sum sum_j j a_j is r mod p.
std::vector<BigInt> row_profile(int part, long p, ColumnRange range) {
  // ways[s][r]: multisets of size s over the columns processed so far.
  std::vector<std::vector<BigInt>> ways(part + 1, std::vector<BigInt>(p, BigInt(0)));
  ways[0][0] = 1;
  const long first = range == ColumnRange::kFull ? 0 : 1;
  for (long j = first; j < p; ++j) {
    for (int s = 1; s <= part; ++s) {
      for (long r = 0; r < p; ++r) ways[s][r] += ways[s - 1][mod(r - j, p)];
    }
  }
  return ways[part];
}

}  // namespace

RowCounts row_counts(int part, long p) {
  if (part < 0) throw std::invalid_argument("row_counts: negative part");
  return RowCounts{binomial(part + p - 1, part), binomial(part + p - 2, part)};
}

PartWZ part_wz(int part, long p) {
  require_odd_prime(p, "part_wz");
  if (part < 0) throw std::invalid_argument("part_wz: negative part");
  const BigInt b = row_counts(part, p).b;
  switch (part % p) {
    case 0: {
      BigInt z = exact_div(b - 1, p, "part_wz (P = 0 mod p)");
      return {z + 1, z};
    }
    case 1: {
      BigInt z = exact_div(b + 1, p, "part_wz (P = 1 mod p)");
      return {z - 1, z};
    }
    default: {
      BigInt z = exact_div(b, p, "part_wz");
      return {z, z};
    }
  }
}

BigInt block_row_product(std::span<const int> parts, long p) {
  BigInt product = 1;
  for (int part : parts) product *= row_counts(part, p).b;
  return product;
}

PartWZ block_wz(std::span<const int> parts, long p) {
  require_odd_prime(p, "block_wz");
  if (parts.empty()) throw std::invalid_argument("block_wz: parts must be nonempty");
  const BigInt B = block_row_product(parts, p);
  int ones = 0;
  bool equidistributed = false;
  for (int part : parts) {
    if (part < 1) throw std::invalid_argument("block_wz: parts must be positive");
    long r = part % p;
    if (r == 1) ++ones;
    else if (r != 0) equidistributed = true;
  }
  if (equidistributed) {
    BigInt z = exact_div(B, p, "block_wz");
    return {z, z};
  }
  const int sign = ones % 2 == 0 ? 1 : -1;  // (-1)^t
  BigInt z = exact_div(B - sign, p, "block_wz");
  return {z + sign, z};
}

BigInt Distribution::total() const {
  BigInt sum = 0;
  for (const auto& c : counts) sum += c;
  return sum;
}

Distribution full_distribution(std::span<const int> parts, std::span<const long> weights, long p,
                               ColumnRange range) {
  require_odd_prime(p, "full_distribution");
  if (weights.size() != parts.size())
    throw std::invalid_argument("full_distribution: need one weight per part");
  std::vector<BigInt> acc(p, BigInt(0));
  acc[0] = 1;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0) throw std::invalid_argument("full_distribution: negative part");
    if (weights[i] < 1 || weights[i] > p - 1)
      throw std::invalid_argument("full_distribution: weights must lie in 1..p-1");
    const auto profile = row_profile(parts[i], p, range);
    std::vector<BigInt> next(p, BigInt(0));
    for (long a = 0; a < p; ++a) {
      if (acc[a] == 0) continue;
      for (long r = 0; r < p; ++r) next[(a + weights[i] * r) % p] += acc[a] * profile[r];
    }
    acc = std::move(next);
  }
  return Distribution{std::move(acc)};
}

}  // namespace topotype
