#include "topotype/partition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "topotype/errors.hpp"

namespace topotype {

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("partition: not an integer: '" + std::string(text) + "'");
  return value;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Number of nontrivial cyclic subgroups (p^k - 1)/(p - 1).
BigInt subgroup_count(long p, int k) {
  BigInt pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return (pk - 1) / (p - 1);
}

}  // namespace

PartitionType::PartitionType(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("partition: at least one part is required");
  for (int part : parts_)
    if (part < 1) throw std::invalid_argument("partition: parts must be positive, got " + std::to_string(part));
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

PartitionType PartitionType::parse(std::string_view text) {
  std::vector<int> parts;
  while (true) {
    auto comma = text.find(',');
    std::string_view item = strip(text.substr(0, comma));
    if (item.empty()) throw std::invalid_argument("partition: empty part in list");
    if (auto caret = item.find('^'); caret != std::string_view::npos) {
      int part = parse_int(strip(item.substr(0, caret)));
      std::string_view exponent = strip(item.substr(caret + 1));
      if (exponent.size() >= 2 && exponent.front() == '[' && exponent.back() == ']')
        exponent = exponent.substr(1, exponent.size() - 2);
      int times = parse_int(exponent);
      if (times < 1) throw std::invalid_argument("partition: exponent must be positive");
      parts.insert(parts.end(), times, part);
    } else {
      parts.push_back(parse_int(item));
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return PartitionType(std::move(parts));
}

int PartitionType::total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int PartitionType::multiplicity(int part) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
}

std::string PartitionType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

void ActionParams::validate() const {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("rank k must be at least 1");
  if (R < 3) throw std::invalid_argument("R must be at least 3 for a fully ramified action");
}

BigInt genus_of(const ActionParams& params) {
  params.validate();
  BigInt pk1, pk;
  mpz_ui_pow_ui(pk1.get_mpz_t(), static_cast<unsigned long>(params.p), static_cast<unsigned long>(params.k - 1));
  pk = pk1 * params.p;
  BigInt twice = BigInt(params.R) * pk1 * (params.p - 1);
  if (twice % 2 != 0)
    throw std::domain_error("no fully ramified action: R p^(k-1)(p-1) is odd, so the genus is not integral");
  BigInt g = 1 + twice / 2 - pk;
  if (g <= 1)
    throw std::domain_error("genus " + g.get_str() + " <= 1: no hyperbolic action for p=" + std::to_string(params.p) +
                            ", k=" + std::to_string(params.k) + ", R=" + std::to_string(params.R));
  return g;
}

std::vector<PartitionType> all_partitions(int R) {
  std::vector<PartitionType> out;
  if (R < 1) return out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(R, R);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> admissibility_violation(long p, int k, const PartitionType& partition) {
  const int n = partition.size();
  const int R = partition.total();
  if (k == 1) {
    if (n != 1) return "rank 1 actions have a single part, got " + std::to_string(n) + " parts";
    return std::nullopt;
  }
  BigInt max_parts = subgroup_count(p, k);
  if (n < k || BigInt(n) > max_parts)
    return "restriction 1: the number of parts n=" + std::to_string(n) + " must lie in [" + std::to_string(k) + ", " +
           max_parts.get_str() + "] (at least k parts, at most one per nontrivial cyclic subgroup)";
  if (n == k && partition.parts().back() < 2)
    return "restriction 2: with exactly k=" + std::to_string(k) +
           " parts every part must have size >= 2 (a part of size 1 leaves a nonzero row sum)";
  if (partition.largest() > R - k)
    return "restriction 3: largest part " + std::to_string(partition.largest()) + " exceeds R-k=" +
           std::to_string(R - k);
  return std::nullopt;
}

std::vector<PartitionType> admissible_partitions(long p, int k, int R) {
  ActionParams{p, k, R}.validate();
  if (k == 1) return {PartitionType({R})};
  std::vector<PartitionType> out;
  for (auto& partition : all_partitions(R))
    if (!admissibility_violation(p, k, partition)) out.push_back(std::move(partition));
  std::stable_sort(out.begin(), out.end(),
                   [](const PartitionType& a, const PartitionType& b) { return a.size() < b.size(); });
  return out;
}

BigInt marking_count(long p, int n) {
  if (n < 2) throw std::invalid_argument("marking_count: need at least two parts");
  if (n > p + 1)
    throw AdmissibilityError("marking_count: " + std::to_string(n) + " parts exceed the " + std::to_string(p + 1) +
                             " cyclic subgroups");
  if (n <= 3) return 1;
  return binomial(p - 2, n - 3);
}

}  // namespace topotype
