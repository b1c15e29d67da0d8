// Acceptance suite: one line per criterion, PASS or FAIL, with the measured
// runtime against its pinned limit. Exit status is nonzero if any criterion
// fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/brute.hpp"
#include "support/published_table.hpp"
#include "topotype/counting.hpp"
#include "topotype/oracle.hpp"
#include "topotype/polyfit.hpp"
#include "topotype/residue.hpp"

using namespace topotype;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;  // printed under the line, capped

  void fail(std::string note) {
    pass = false;
    notes.push_back(std::move(note));
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

// published table reproduction at p = 5, 7, 11, 13.
Outcome ac1() {
  Outcome o;
  int checked = 0, rows_ok = 0, rows = 0;
  for (auto& row : published::rows()) {
    ++rows;
    bool row_ok = true;
    for (long p : {5L, 7L, 11L, 13L}) {
      if (!row.applies(p)) continue;
      ++checked;
      const Rational expected = row.value(p);
      const BigInt got = count_types_rank2(PartitionType::parse(row.partition), p).T;
      if (Rational(got) != expected) {
        row_ok = false;
        o.fail(cat("{", row.partition, "} p=", p, ": formula ", got.get_str(), ", table ", row.formula, " = ",
                   rational_to_string(expected)));
      }
    }
    rows_ok += row_ok;
  }
  o.summary = cat(rows_ok, "/", rows, " table rows reproduced over ", checked, " evaluations");
  return o;
}

// Coefficient-exact reconstruction of every row from sampled primes.
Outcome ac2() {
  Outcome o;
  const std::vector<long> primes{5, 7, 11, 13, 17, 19};
  int rows_ok = 0, rows = 0;
  for (int R = 3; R <= 6; ++R) {
    const Table table = build_table(R, primes);
    for (auto& row : published::rows()) {
      if (row.R != R) continue;
      ++rows;
      auto it = std::find_if(table.rows.begin(), table.rows.end(),
                             [&](const TableRow& t) { return t.partition.to_string() == row.partition; });
      if (it == table.rows.end()) {
        o.fail(cat("{", row.partition, "} missing from the fitted table"));
        continue;
      }
      const auto& fit = it->fit;
      if (!fit.consistent()) {
        o.fail(cat("{", row.partition, "}: ", fit.failure()));
        continue;
      }
      std::size_t samples = 0;
      for (auto& [residue, branch] : fit.branches) samples += branch.fit_primes.size() + branch.check_primes.size();
      long probe = 5;
      while (!row.applies(probe)) probe = next_prime(probe);
      const auto& branch = fit.branch_for(probe);
      const auto expected = published::as_polynomial(row, branch.poly.degree() + 2);
      if (samples < 6 || branch.check_primes.empty()) {
        o.fail(cat("{", row.partition, "}: too few samples or no held-out prime"));
      } else if (!(branch.poly == expected)) {
        o.fail(cat("{", row.partition, "}: fitted ", branch.poly.to_string(), ", table ", expected.to_string()));
      } else {
        ++rows_ok;
      }
    }
  }
  o.summary = cat(rows_ok, "/", rows, " table entries recovered coefficient-exactly");
  return o;
}

// Brute-force orbit counts against the closed forms, rank 2.
Outcome ac3() {
  Outcome o;
  int cases = 0, agree = 0;
  std::vector<std::string> by_prime;
  for (auto [p, R_max] : {std::pair{3L, 6}, {5L, 6}, {7L, 5}}) {
    int prime_cases = 0, prime_agree = 0;
    for (int R = 3; R <= R_max; ++R) {
      OrbitOptions options;
      options.guard.max_steps = BigInt("100000000000");
      const OrbitTable table = count_orbits(p, 2, R, options);
      const TotalReport formula = total_types(p, 2, R);
      std::set<PartitionType> seen;
      auto compare = [&](const std::string& what, const BigInt& oracle, const BigInt& closed) {
        ++cases;
        ++prime_cases;
        if (oracle == closed) {
          ++agree;
          ++prime_agree;
        } else {
          o.fail(cat("p=", p, " R=", R, " ", what, ": orbits ", oracle.get_str(), ", formula ", closed.get_str()));
        }
      };
      for (auto& row : formula.rows) {
        seen.insert(row.partition);
        auto it = table.by_partition.find(row.partition);
        compare("{" + row.partition.to_string() + "}", it == table.by_partition.end() ? BigInt(0) : it->second, row.T);
      }
      for (auto& [partition, count] : table.by_partition)
        if (!seen.count(partition)) compare("{" + partition.to_string() + "} (no formula row)", count, 0);
      compare("total", table.total, formula.total);
    }
    by_prime.push_back(cat("p=", p, ": ", prime_agree, "/", prime_cases));
  }
  o.summary = cat(agree, "/", cases, " comparisons agree (");
  for (std::size_t i = 0; i < by_prime.size(); ++i) o.summary += (i ? ", " : "") + by_prime[i];
  o.summary += ")";
  return o;
}

// Rank 1 orbit counts.
Outcome ac4() {
  Outcome o;
  int cases = 0;
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (int R = 3; R <= 10; ++R) {
      ++cases;
      const BigInt oracle = rank1_orbit_count(p, R);
      const BigInt closed = count_types_rank1(R, p).T;
      if (oracle != closed) o.fail(cat("p=", p, " R=", R, ": orbits ", oracle.get_str(), ", formula ", closed.get_str()));
    }
  for (int R = 3; R <= 10; ++R) {
    ++cases;
    const BigInt want = R % 2 == 0 ? 1 : 0;
    if (rank1_orbit_count(2, R) != want || count_types_rank1(R, 2).T != want) o.fail(cat("p=2 R=", R, " parity"));
  }
  o.summary = cat(cases, " (p, R) cases compared");
  return o;
}

// Klein four-group.
Outcome ac5() {
  Outcome o;
  for (int R = 3; R <= 10; ++R) {
    const BigInt oracle = count_orbits(2, 2, R).total;
    const BigInt closed = count_types_klein(R);
    if (oracle != closed) o.fail(cat("R=", R, ": orbits ", oracle.get_str(), ", formula ", closed.get_str()));
  }
  o.summary = "R = 3..10 compared";
  return o;
}

// Weighted-sum distributions, dynamic programming against literal enumeration.
Outcome ac6() {
  Outcome o;
  int cases = 0;
  for (long p : {3L, 5L, 7L})
    for (int total = 1; total <= 8; ++total)
      for (auto& parts : brute::partitions(total)) {
        std::vector<long> ones(parts.size(), 1), mixed(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) mixed[i] = p - 1 - static_cast<long>(i % (p - 1));
        for (auto range : {ColumnRange::kFull, ColumnRange::kZeroFirst}) {
          const Distribution a = full_distribution(parts, ones, p, range);
          const Distribution b = full_distribution(parts, mixed, p, range);
          const Distribution truth = distribution_bruteforce(parts, mixed, p, range);
          cases += 2;
          if (!(a == truth) || !(b == truth))
            o.fail(cat("p=", p, " parts ", PartitionType(parts).to_string(),
                       range == ColumnRange::kFull ? " full" : " zero-first"));
        }
      }
  std::vector<int> three{3};
  std::vector<long> w{1};
  const Distribution spot = full_distribution(three, w, 3, ColumnRange::kFull);
  if (!(spot == Distribution{{4, 3, 3}})) o.fail("spot value parts={3}, p=3");
  o.summary = cat(cases, " distributions compared, spot value (4,3,3) checked");
  return o;
}

// |A| does not depend on the order in which parts enter the recursion.
Outcome ac7() {
  Outcome o;
  long perms = 0;
  for (long p : {5L, 7L, 11L})
    for (int R = 3; R <= 8; ++R)
      for (auto& partition : admissible_partitions(p, 2, R)) {
        std::vector<int> parts(partition.parts().begin(), partition.parts().end());
        const BigInt reference = card_A(partition, p);
        std::sort(parts.begin(), parts.end());
        do {
          ++perms;
          if (card_A_recursive(parts, p) != reference)
            o.fail(cat("p=", p, " {", partition.to_string(), "} order ", PartitionType(parts).to_string()));
        } while (std::next_permutation(parts.begin(), parts.end()));
      }
  o.summary = cat(perms, " part orders checked");
  return o;
}

// Shortcut, base cases, unitary recursion and the worked example.
Outcome ac8() {
  Outcome o;
  long checks = 0;
  for (long p : {5L, 7L, 11L, 13L})
    for (int R = 2; R <= 10; ++R)
      for (auto& parts : brute::partitions(R)) {
        const long n = static_cast<long>(parts.size());
        if (n < 2 || n > p + 1) continue;
        const BigInt rec = card_A_recursive(parts, p);
        if (auto shortcut = card_A_shortcut(parts, p)) {
          ++checks;
          if (*shortcut != rec) o.fail(cat("shortcut p=", p, " ", PartitionType(parts).to_string()));
        }
        if (n == 2 && card_A_base2(parts[0], parts[1], p) != rec) o.fail(cat("base2 p=", p));
        if (n == 3 && card_A_base3(parts[0], parts[1], parts[2], p) != rec) o.fail(cat("base3 p=", p));
        checks += n <= 3;
      }
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (int n = 2; n <= std::min(9L, p + 1); ++n) {
      ++checks;
      if (card_A_unitary(n, p) != card_A(PartitionType(std::vector<int>(n, 1)), p)) o.fail(cat("unitary n=", n, " p=", p));
    }
  for (long p : {5L, 7L, 11L, 13L}) {
    const PartitionType example = PartitionType::parse("2,2,1,1");
    const BigInt q = p - 1;
    checks += 2;
    if (card_A(example, p) != q * q * q * q / 4) o.fail(cat("|A({1,1,2,2})| at p=", p));
    if (count_types_rank2(example, p).T != (p - 2) * q * q * q / 4) o.fail(cat("T(1,1,2,2) at p=", p));
  }
  o.summary = cat(checks, " identities checked");
  return o;
}

// Gaussian binomial coefficients.
Outcome ac9() {
  Outcome o;
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      const auto g = gaussian_binomial(m, n);
      for (int l = 0; l <= m * n; ++l)
        if (g.coeffs.at(l) != brute::bounded_partitions(l, m, n)) o.fail(cat("[", m, ",", n, "] coefficient ", l));
    }
  for (int m = 0; m <= 8; ++m)
    for (int n = 0; n <= 8; ++n) {
      const auto g = gaussian_binomial(m, n);
      if (!std::equal(g.coeffs.begin(), g.coeffs.end(), g.coeffs.rbegin())) o.fail(cat("[", m, ",", n, "] not palindromic"));
      if (g.evaluate(1) != binomial(m + n, m)) o.fail(cat("[", m, ",", n, "] at q=1"));
    }
  o.summary = "coefficients for m,n <= 6; symmetry and q=1 for m,n <= 8";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "published table reproduction", 1.0, ac1},
      {"AC2", "polynomial reconstruction", 5.0, ac2},
      {"AC3", "oracle equivalence, rank 2", 300.0, ac3},
      {"AC4", "oracle equivalence, rank 1", 10.0, ac4},
      {"AC5", "Klein four-group", 10.0, ac5},
      {"AC6", "weighted-sum distributions", 30.0, ac6},
      {"AC7", "recursion order independence", 30.0, ac7},
      {"AC8", "shortcut/base/unitary consistency", 30.0, ac8},
      {"AC9", "Gaussian binomials", 5.0, ac9},
  };
  constexpr std::size_t kMaxNotes = 12;
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(cat("exception: ", e.what()));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) o.fail(cat("runtime over the limit"));
    failed += !o.pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", seconds, c.limit_seconds);
    std::cout << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << c.title << ": " << o.summary << " [" << timing
              << "]\n";
    for (std::size_t i = 0; i < o.notes.size() && i < kMaxNotes; ++i) std::cout << "      " << o.notes[i] << "\n";
    if (o.notes.size() > kMaxNotes) std::cout << "      ... " << o.notes.size() - kMaxNotes << " more\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
