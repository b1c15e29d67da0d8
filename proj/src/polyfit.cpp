#include "topotype/polyfit.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "topotype/counting.hpp"

namespace topotype {

namespace {

std::vector<long> coprime_classes(long modulus) {
  std::vector<long> classes;
  if (modulus == 1) return {0};
  for (long r = 1; r < modulus; ++r)
    if (std::gcd(r, modulus) == 1) classes.push_back(r);
  return classes;
}

bool eligible(const PartitionType& partition, long p) {
  return p > 3 && p > partition.largest() && partition.size() <= p + 1;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string describe_fit(const StratifiedPolynomial& fit) {
  if (!fit.consistent()) return fit.failure();
  if (fit.modulus == 1) return fit.branches.begin()->second.poly.to_string();
  std::string out;
  for (const auto& [residue, branch] : fit.branches) {
    if (!out.empty()) out += "; ";
    out += "p = " + std::to_string(residue) + " mod " + std::to_string(fit.modulus) + ": " + branch.poly.to_string();
  }
  return out;
}

}  // namespace

bool StratifiedPolynomial::consistent() const {
  return std::all_of(branches.begin(), branches.end(), [](const auto& kv) { return kv.second.consistent; });
}

const PolynomialBranch& StratifiedPolynomial::branch_for(long p) const {
  auto it = branches.find(modulus == 1 ? 0 : p % modulus);
  if (it == branches.end())
    throw std::out_of_range("no branch for p = " + std::to_string(p) + " mod " + std::to_string(modulus));
  return it->second;
}

std::string StratifiedPolynomial::failure() const {
  return consistent() ? std::string() : "not polynomial at this modulus/degree";
}

StratifiedPolynomial fit_polynomial(const CountFunction& count, int degree_bound, long modulus,
                                    std::span<const long> primes) {
  if (degree_bound < 0) throw std::invalid_argument("fit_polynomial: negative degree bound");
  if (modulus < 1) throw std::invalid_argument("fit_polynomial: modulus must be positive");

  std::map<long, std::vector<long>> by_class;
  for (long r : coprime_classes(modulus)) by_class[r];
  std::set<long> seen;
  for (long p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("fit_polynomial: " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) continue;
    long r = modulus == 1 ? 0 : p % modulus;
    auto it = by_class.find(r);
    if (it != by_class.end()) it->second.push_back(p);
  }

  StratifiedPolynomial fit;
  fit.modulus = modulus;
  fit.degree_bound = degree_bound;
  const std::size_t needed = static_cast<std::size_t>(degree_bound) + 1;
  for (auto& [residue, sample] : by_class) {
    if (sample.size() < needed)
      throw std::invalid_argument("insufficient primes in residue class " + std::to_string(residue) + " mod " +
                                  std::to_string(modulus) + ": have " + std::to_string(sample.size()) + ", need " +
                                  std::to_string(needed));
    PolynomialBranch branch;
    branch.residue = residue;
    branch.fit_primes.assign(sample.begin(), sample.begin() + needed);
    branch.check_primes.assign(sample.begin() + needed, sample.end());
    if (branch.check_primes.empty()) {
      long q = *std::max_element(sample.begin(), sample.end());
      do q = next_prime(q);
      while (modulus != 1 && q % modulus != residue);
      branch.check_primes.push_back(q);
    }

    std::vector<std::pair<long, Rational>> points;
    for (long p : branch.fit_primes) points.emplace_back(p, Rational(count(p)));
    branch.poly = interpolate(points);
    for (long p : branch.check_primes)
      if (branch.poly.evaluate(Rational(p)) != Rational(count(p))) branch.consistent = false;
    fit.branches.emplace(residue, std::move(branch));
  }
  return fit;
}

BigInt rank2_count_or_zero(const PartitionType& partition, long p) {
  if (admissibility_violation(p, 2, partition)) return 0;
  return count_types_rank2(partition, p).T;
}

StratifiedPolynomial fit_partition_polynomial(const PartitionType& partition, int degree_bound, long modulus,
                                              std::span<const long> primes) {
  std::vector<long> usable, skipped;
  for (long p : primes) {
    if (p <= 3) throw std::invalid_argument("fit_partition_polynomial: sampled primes must exceed 3");
    (eligible(partition, p) ? usable : skipped).push_back(p);
  }
  auto fit = fit_polynomial([&](long p) { return rank2_count_or_zero(partition, p); }, degree_bound, modulus, usable);
  fit.skipped_primes = std::move(skipped);
  return fit;
}

int default_degree_bound(const PartitionType& partition) {
  return partition.total() - 3 + std::max(0, partition.size() - 3);
}

long default_modulus(const PartitionType& partition) {
  long l = 1;
  for (long i = 2; i <= partition.largest(); ++i) l = std::lcm(l, i);
  return 2 * l;
}

StratifiedPolynomial reduce_modulus(const StratifiedPolynomial& fit) {
  if (!fit.consistent()) return fit;
  for (long candidate = 1; candidate <= fit.modulus; ++candidate) {
    if (fit.modulus % candidate != 0) continue;
    std::map<long, PolynomialBranch> merged;
    bool agrees = true;
    for (const auto& [residue, branch] : fit.branches) {
      long r = candidate == 1 ? 0 : residue % candidate;
      auto [it, fresh] = merged.try_emplace(r, branch);
      if (fresh) {
        it->second.residue = r;
        continue;
      }
      if (!(it->second.poly == branch.poly)) {
        agrees = false;
        break;
      }
      auto& into = it->second;
      into.fit_primes.insert(into.fit_primes.end(), branch.fit_primes.begin(), branch.fit_primes.end());
      into.check_primes.insert(into.check_primes.end(), branch.check_primes.begin(), branch.check_primes.end());
      std::sort(into.fit_primes.begin(), into.fit_primes.end());
      std::sort(into.check_primes.begin(), into.check_primes.end());
    }
    if (!agrees) continue;
    StratifiedPolynomial reduced = fit;
    reduced.modulus = candidate;
    reduced.branches = std::move(merged);
    return reduced;
  }
  return fit;
}

Table build_table(int R, std::span<const long> primes) {
  if (R < 3) throw std::invalid_argument("build_table: R must be at least 3");
  Table table;
  table.R = R;
  table.primes.assign(primes.begin(), primes.end());
  for (long p : primes)
    if (!is_prime(p)) throw std::invalid_argument("build_table: " + std::to_string(p) + " is not prime");

  for (const auto& partition : admissible_partitions(next_prime(R), 2, R)) {
    const int degree = default_degree_bound(partition);
    const long modulus = default_modulus(partition);
    const auto classes = coprime_classes(modulus);

    std::vector<long> sample;
    for (long p : primes)
      if (eligible(partition, p)) sample.push_back(p);
    auto class_of = [&](long p) { return modulus == 1 ? 0 : p % modulus; };
    auto short_class = [&] {
      for (long r : classes) {
        auto have = std::count_if(sample.begin(), sample.end(), [&](long p) { return class_of(p) == r; });
        if (have < degree + 2) return true;
      }
      return false;
    };
    long q = sample.empty() ? 3 : *std::max_element(sample.begin(), sample.end());
    while (short_class()) {
      q = next_prime(q);
      if (eligible(partition, q)) sample.push_back(q);
    }

    TableRow row;
    row.partition = partition;
    row.fit = reduce_modulus(fit_partition_polynomial(partition, degree, modulus, sample));
    for (long p : primes) row.counts.emplace_back(p, rank2_count_or_zero(partition, p));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_table(const Table& table, TableFormat format) {
  std::ostringstream out;
  switch (format) {
    case TableFormat::kPlain: {
      std::vector<std::string> names, fits;
      std::size_t name_width = 9, fit_width = 4;
      for (const auto& row : table.rows) {
        names.push_back(row.partition.to_string());
        fits.push_back(describe_fit(row.fit));
        name_width = std::max(name_width, names.back().size());
        fit_width = std::max(fit_width, fits.back().size());
      }
      out << "R = " << table.R << "\n";
      out << std::left << std::setw(name_width) << "partition" << "  " << std::setw(fit_width) << "T(p)";
      for (long p : table.primes) out << "  " << std::right << std::setw(8) << ("p=" + std::to_string(p));
      out << "\n";
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out << std::left << std::setw(name_width) << names[i] << "  " << std::setw(fit_width) << fits[i];
        for (const auto& [p, count] : table.rows[i].counts) out << "  " << std::right << std::setw(8) << count.get_str();
        out << "\n";
      }
      break;
    }
    case TableFormat::kCsv: {
      out << "R,partition,modulus,class,polynomial,consistent";
      for (long p : table.primes) out << ",p=" << p;
      out << "\n";
      for (const auto& row : table.rows) {
        for (const auto& [residue, branch] : row.fit.branches) {
          out << table.R << ',' << csv_quote(row.partition.to_string()) << ',' << row.fit.modulus << ',' << residue
              << ',' << csv_quote(branch.poly.to_string()) << ',' << (branch.consistent ? "true" : "false");
          for (const auto& [p, count] : row.counts) out << ',' << count.get_str();
          out << "\n";
        }
      }
      break;
    }
    case TableFormat::kJson: {
      auto records = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        for (const auto& [residue, branch] : row.fit.branches) {
          nlohmann::ordered_json record;
          record["R"] = std::to_string(table.R);
          record["partition"] = row.partition.to_string();
          record["modulus"] = std::to_string(row.fit.modulus);
          record["class"] = std::to_string(residue);
          record["degree_bound"] = std::to_string(row.fit.degree_bound);
          auto coeffs = nlohmann::ordered_json::array();
          for (const auto& c : branch.poly.coefficients()) coeffs.push_back(rational_to_string(c));
          record["coefficients"] = coeffs;
          record["polynomial"] = branch.poly.to_string();
          record["consistent"] = branch.consistent;
          nlohmann::ordered_json counts;
          for (const auto& [p, count] : row.counts) counts[std::to_string(p)] = count.get_str();
          record["counts"] = counts;
          records.push_back(record);
        }
      }
      out << records.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

std::string render_table(int R, std::span<const long> primes, TableFormat format) {
  return render_table(build_table(R, primes), format);
}

}  // namespace topotype
