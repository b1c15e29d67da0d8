#include "topotype/counting.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "topotype/errors.hpp"
#include "topotype/residue.hpp"

namespace topotype {

namespace {

void require_odd_prime(long p, const char* where) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument(std::string(where) + ": p must be an odd prime, got " + std::to_string(p));
}

bool equidistributes(int part, long p) {
  long r = part % p;
  return r != 0 && r != 1;
}

// Klein group: (W, Z) = (1, 0) for even parts, (0, 1) for odd.
PartWZ klein_wz(int part) { return part % 2 == 0 ? PartWZ{1, 0} : PartWZ{0, 1}; }

CountReport klein_report(const PartitionType& partition) {
  const auto parts = partition.parts();
  BigInt w = 1, z = parts.size() == 2 ? 0 : 1;
  for (int part : parts) {
    auto wz = klein_wz(part);
    w *= wz.W;
    z *= wz.Z;
  }
  CountReport report;
  report.partition = partition;
  report.p = 2;
  report.k = 2;
  report.card_A = w + z;
  report.marking_multiplier = 1;
  report.T = report.card_A;
  return report;
}

}  // namespace

BigInt card_A_base2(int P1, int P2, long p) {
  require_odd_prime(p, "card_A_base2");
  return part_wz(P1, p).W * part_wz(P2, p).W;
}

BigInt card_A_base3(int P1, int P2, int P3, long p) {
  require_odd_prime(p, "card_A_base3");
  const auto a = part_wz(P1, p), b = part_wz(P2, p), c = part_wz(P3, p);
  return a.W * b.W * c.W + BigInt(p - 1) * a.Z * b.Z * c.Z;
}

BigInt card_A_recursive(std::span<const int> ordered, long p) {
  require_odd_prime(p, "card_A_recursive");
  const std::size_t n = ordered.size();
  if (n < 2) throw std::invalid_argument("card_A_recursive: need at least two parts");
  if (n == 2) return card_A_base2(ordered[0], ordered[1], p);

  std::size_t start = n % 2 == 0 ? n - 2 : n - 3;
  BigInt r = n % 2 == 0 ? card_A_base2(ordered[n - 2], ordered[n - 1], p)
                        : card_A_base3(ordered[n - 3], ordered[n - 2], ordered[n - 1], p);
  while (start > 0) {
    // r = |A| of the trailing block; its (W', Z') fix the aggregated
    // residue-class counts s01 = s10 and s11 of the compact quadratic form.
    const auto block = block_wz(ordered.subspan(start), p);
    const BigInt s01 = block.W - r;
    const BigInt s11 = BigInt(p - 1) * block.Z - block.W + r;
    if (s01 < 0 || s11 < 0)
      throw InvariantViolation("card_A_recursive: negative residue-class count at block starting " +
                               std::to_string(start));
    const auto a = part_wz(ordered[start - 2], p);
    const auto b = part_wz(ordered[start - 1], p);
    r = a.W * b.W * r + (a.W * b.Z + a.Z * b.W) * s01 + a.Z * b.Z * s11;
    start -= 2;
  }
  return r;
}

std::optional<BigInt> card_A_shortcut(std::span<const int> parts, long p) {
  require_odd_prime(p, "card_A_shortcut");
  int spread = 0;
  for (int part : parts)
    if (equidistributes(part, p)) ++spread;
  if (spread < 2) return std::nullopt;
  return exact_div(block_row_product(parts, p), BigInt(p) * p, "card_A_shortcut");
}

BigInt card_A(const PartitionType& partition, long p) {
  require_odd_prime(p, "card_A");
  const int n = partition.size();
  if (n < 2) throw std::invalid_argument("card_A: need at least two parts");
  if (n > p + 1)
    throw AdmissibilityError("card_A: " + std::to_string(n) + " parts exceed the " + std::to_string(p + 1) +
                             " cyclic subgroups");
  if (auto quick = card_A_shortcut(partition.parts(), p)) return *quick;
  return card_A_recursive(partition.parts(), p);
}

BigInt card_A_unitary(int n, long p) {
  require_odd_prime(p, "card_A_unitary");
  if (n < 2 || n > p + 1) throw std::invalid_argument("card_A_unitary: need 2 <= n <= p+1");
  BigInt even = 0;      // |A(1^[2])|
  BigInt odd = p - 1;   // |A(1^[3])|
  BigInt power;
  for (int m = 4; m <= n; ++m) {
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(p - 1), static_cast<unsigned long>(m - 2));
    if (m % 2 == 0)
      even = BigInt(p - 2) * exact_div(power - 1, p, "card_A_unitary") - 1 + even;
    else
      odd = BigInt(p - 2) * exact_div(power + 1, p, "card_A_unitary") + 1 + odd;
  }
  return n % 2 == 0 ? even : odd;
}

std::vector<BurnsideTerm> burnside_terms(std::span<const int> parts, long p) {
  long d = p - 1;
  for (int part : parts) d = std::gcd(d, static_cast<long>(part));
  std::vector<BurnsideTerm> terms;
  if (d < 2) return terms;
  for (long divisor : divisors_greater_than_one(d)) {
    BigInt fixed = 1;
    for (int part : parts) fixed *= multichoose(part / divisor, (p - 1) / divisor);
    terms.push_back({divisor, euler_phi(divisor) * fixed});
  }
  return terms;
}

CountReport count_types_rank2(const PartitionType& partition, long p) {
  if (!is_prime(p)) throw std::invalid_argument("count_types_rank2: p = " + std::to_string(p) + " is not prime");
  if (auto violation = admissibility_violation(p, 2, partition)) throw AdmissibilityError(*violation);
  if (p == 2) return klein_report(partition);

  const auto parts = partition.parts();
  CountReport report;
  report.partition = partition;
  report.p = p;
  report.k = 2;
  switch (partition.size()) {
    case 2:
      report.card_A = card_A_base2(parts[0], parts[1], p);
      break;
    case 3:
      report.card_A = card_A_base3(parts[0], parts[1], parts[2], p);
      break;
    default:
      report.card_A = card_A(partition, p);
  }
  report.burnside_terms = burnside_terms(parts, p);
  report.marking_multiplier = marking_count(p, partition.size());
  BigInt orbit_sum = report.card_A;
  for (const auto& term : report.burnside_terms) orbit_sum += term.contribution;
  report.T = report.marking_multiplier * exact_div(orbit_sum, p - 1, "count_types_rank2");
  report.oracle_validated_only = p == 3;
  return report;
}

CountReport count_types_rank1(int R, long p) {
  ActionParams{p, 1, R}.validate();
  CountReport report;
  report.partition = PartitionType({R});
  report.p = p;
  report.k = 1;
  report.marking_multiplier = 1;
  if (p == 2) {
    report.card_A = R % 2 == 0 ? 1 : 0;
    report.T = report.card_A;
    return report;
  }
  const int single[] = {R};
  report.card_A = part_wz(R, p).W;
  report.burnside_terms = burnside_terms(single, p);
  BigInt orbit_sum = report.card_A;
  for (const auto& term : report.burnside_terms) orbit_sum += term.contribution;
  report.T = exact_div(orbit_sum, p - 1, "count_types_rank1");
  return report;
}

BigInt count_types_klein(int R) {
  if (R < 3) throw std::invalid_argument("count_types_klein: R must be at least 3");
  long count = 0;
  for (int a = 1; 3 * a <= R; ++a) {
    for (int b = a; a + 2 * b <= R; ++b) {
      int c = R - a - b;
      if (a % 2 == b % 2 && b % 2 == c % 2) ++count;
    }
  }
  for (int a = 2; 2 * a <= R; a += 2)
    if ((R - a) % 2 == 0) ++count;
  return count;
}

TotalReport total_types(long p, int k, int R) {
  ActionParams{p, k, R}.validate();
  TotalReport total;
  total.p = p;
  total.k = k;
  total.R = R;
  total.total = 0;
  if (k == 1) {
    total.rows.push_back(count_types_rank1(R, p));
  } else if (k == 2) {
    for (const auto& partition : admissible_partitions(p, 2, R)) total.rows.push_back(count_types_rank2(partition, p));
  } else {
    throw std::invalid_argument("total_types: counting is available for ranks 1 and 2 only");
  }
  for (const auto& row : total.rows) total.total += row.T;
  return total;
}

}  // namespace topotype
