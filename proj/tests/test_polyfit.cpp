#include <set>

#include "doctest.h"
#include "json.hpp"
#include "support/published_table.hpp"
#include "topotype/counting.hpp"
#include "topotype/polyfit.hpp"

using namespace topotype;

namespace {

PartitionType P(const char* s) { return PartitionType::parse(s); }

const std::vector<long> kPrimes = [] {
  std::vector<long> out;
  for (long p = 5; p < 200; p = next_prime(p)) out.push_back(p);
  return out;
}();

}  // namespace

TEST_CASE("synthetic fits") {
  auto square = [](long p) -> BigInt { return BigInt(p) * p - 1; };
  std::vector<long> primes{5, 7, 11, 13};
  auto fit = fit_polynomial(square, 2, 1, primes);
  CHECK(fit.consistent());
  CHECK(fit.branch_for(17).poly == RationalPolynomial::from_integers({-1, 0, 1}));
  CHECK(fit.branch_for(17).check_primes == std::vector<long>{13});

  auto too_low = fit_polynomial(square, 1, 1, primes);
  CHECK_FALSE(too_low.consistent());
  CHECK(too_low.failure() == "not polynomial at this modulus/degree");

  // residue-dependent function with an automatically chosen held-out prime
  auto split = [](long p) -> BigInt { return BigInt(p % 3 == 1 ? p : 2 * p); };
  std::vector<long> few{7, 13, 5, 11};
  auto strat = fit_polynomial(split, 1, 3, few);
  CHECK(strat.consistent());
  CHECK(strat.branches.size() == 2);
  CHECK(strat.branch_for(19).poly == RationalPolynomial::from_integers({0, 1}));
  CHECK(strat.branch_for(17).poly == RationalPolynomial::from_integers({0, 2}));
  CHECK(strat.branch_for(19).check_primes == std::vector<long>{19});

  try {
    std::vector<long> one_class{7, 13, 19};
    fit_polynomial(split, 1, 3, one_class);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("residue class 2 mod 3") != std::string::npos);
  }
}

TEST_CASE("partition fits") {
  auto two = fit_partition_polynomial(P("2,2"), 1, 1, kPrimes);
  CHECK(two.consistent());
  CHECK(two.branch_for(101).poly.to_string() == "(p - 1)/2");

  auto ones = fit_partition_polynomial(P("1,1,1"), 0, 1, kPrimes);
  CHECK(ones.branch_for(7).poly == RationalPolynomial::constant(1));

  auto threes = fit_partition_polynomial(P("3,3"), 3, 3, kPrimes);
  CHECK(threes.consistent());
  for (auto& row : published::rows()) {
    if (row.partition != "3,3") continue;
    const long sample = row.applies(7) ? 7 : 5;
    CHECK(threes.branch_for(sample).poly == published::as_polynomial(row, 3));
  }

  std::vector<long> with_small{3, 5, 7};
  CHECK_THROWS_AS(fit_partition_polynomial(P("2,2"), 1, 1, with_small), std::invalid_argument);

  auto skips = fit_partition_polynomial(P("4,2"), 3, 1, kPrimes);
  CHECK(skips.consistent());
  CHECK(skips.skipped_primes.empty());
  auto unitary = fit_partition_polynomial(P("1^6"), 6, 1, std::vector<long>{5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(unitary.skipped_primes == std::vector<long>{});
  CHECK(unitary.consistent());
}

TEST_CASE("defaults and modulus reduction") {
  CHECK(default_modulus(P("3,3")) == 12);
  CHECK(default_modulus(P("1,1,1")) == 2);
  CHECK(default_degree_bound(P("2,2")) == 1);
  CHECK(default_degree_bound(P("1^6")) == 6);

  auto fit = fit_partition_polynomial(P("3,3"), 3, 12, kPrimes);
  auto reduced = reduce_modulus(fit);
  CHECK(reduced.modulus == 3);
  CHECK(reduced.consistent());
  auto flat = reduce_modulus(fit_partition_polynomial(P("2,2"), 1, 4, kPrimes));
  CHECK(flat.modulus == 1);
}

TEST_CASE("tables") {
  std::vector<long> primes{5, 7, 11, 13, 17, 19};
  auto t3 = build_table(3, primes);
  REQUIRE(t3.rows.size() == 1);
  CHECK(t3.rows[0].fit.branch_for(5).poly == RationalPolynomial::constant(1));

  auto t5 = build_table(5, primes);
  CHECK(t5.rows.size() == 5);

  std::set<std::string> disputed;
  for (auto& row : published::theorem_rows()) disputed.insert(row.partition);
  for (int R = 3; R <= 6; ++R) {
    auto table = build_table(R, primes);
    for (auto& row : table.rows) {
      CHECK(row.fit.consistent());
      for (auto& [residue, branch] : row.fit.branches)
        for (long p : branch.check_primes) CHECK(Rational(rank2_count_or_zero(row.partition, p)) == branch.poly.evaluate(p));
      for (auto& [p, count] : row.counts) CHECK(count == rank2_count_or_zero(row.partition, p));
    }
  }

  auto t7 = build_table(7, std::vector<long>{5, 7, 11, 13, 17, 19, 23});
  CHECK_FALSE(t7.rows.empty());
  for (auto& row : t7.rows) CHECK(row.fit.consistent());
  CHECK_THROWS(build_table(2, primes));
}

TEST_CASE("table rendering") {
  std::vector<long> primes{5, 7, 11, 13, 17, 19};
  auto table = build_table(4, primes);
  auto plain = render_table(table, TableFormat::kPlain);
  CHECK(plain.find("(p - 1)/2") != std::string::npos);
  auto csv = render_table(table, TableFormat::kCsv);
  CHECK(csv.rfind("R,partition,modulus,class,polynomial,consistent", 0) == 0);
  auto json = nlohmann::json::parse(render_table(table, TableFormat::kJson));
  REQUIRE(json.size() == 3);
  CHECK(json[0]["partition"] == "2,2");
  CHECK(json[0]["coefficients"] == nlohmann::json::array({"-1/2", "1/2"}));
  CHECK(json[0]["counts"]["5"] == "2");
}
