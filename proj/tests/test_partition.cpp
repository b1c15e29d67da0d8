#include <algorithm>
#include <set>

#include "doctest.h"
#include "support/brute.hpp"
#include "topotype/errors.hpp"
#include "topotype/partition.hpp"

using namespace topotype;

namespace {

PartitionType P(const char* s) { return PartitionType::parse(s); }

bool admissible_by_hand(long p, int k, const brute::Vec& parts, int R) {
  long subgroups = 0, pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  subgroups = (pk - 1) / (p - 1);
  const int n = static_cast<int>(parts.size());
  if (n < k || n > subgroups) return false;
  if (n == k && *std::min_element(parts.begin(), parts.end()) < 2) return false;
  return parts.front() <= R - k;
}

}  // namespace

TEST_CASE("parsing and rendering") {
  CHECK(P("2,2,1").to_string() == "2,2,1");
  CHECK(P("1,2,2").to_string() == "2,2,1");
  CHECK(P("1^4").to_string() == "1,1,1,1");
  CHECK(P("1^[4]").to_string() == "1,1,1,1");
  CHECK(P("3,1^3").to_string() == "3,1,1,1");
  CHECK(P(" 2 , 1 ").total() == 3);
  CHECK(P("3,1^3").multiplicity(1) == 3);
  CHECK(P("3,1^3").size() == 4);
  CHECK(P("3,1^3").largest() == 3);
  CHECK_THROWS(P(""));
  CHECK_THROWS(P("2,0"));
  CHECK_THROWS(P("2,-1"));
  CHECK_THROWS(P("a"));
  CHECK_THROWS(PartitionType({0}));
}

TEST_CASE("genus") {
  CHECK(genus_of({2, 1, 6}) == 2);
  CHECK(genus_of({5, 2, 4}) == 16);
  CHECK_THROWS_AS(genus_of({3, 1, 3}), std::domain_error);
  for (long p : {2L, 3L, 5L, 7L})
    for (int k : {1, 2})
      for (int R = 3; R <= 12; ++R) {
        // Euler characteristic of the branched cover
        long pk = k == 1 ? p : p * p;
        long chi = pk * (2 - R) + R * (pk / p);
        if (chi % 2) continue;
        long g = 1 - chi / 2;
        if (g <= 1) {
          CHECK_THROWS(genus_of({p, k, R}));
          continue;
        }
        CHECK(genus_of({p, k, R}) == g);
        if (p % 2) CHECK((g - 1) % (pk / p) == 0);
      }
}

TEST_CASE("admissible partitions examples") {
  auto names = [](long p, int k, int R) {
    std::vector<std::string> out;
    for (auto& x : admissible_partitions(p, k, R)) out.push_back(x.to_string());
    return out;
  };
  CHECK(names(5, 2, 4) == std::vector<std::string>{"2,2", "2,1,1", "1,1,1,1"});
  CHECK(names(3, 2, 5) == std::vector<std::string>{"3,2", "2,2,1", "3,1,1", "2,1,1,1"});
  CHECK(names(2, 2, 3) == std::vector<std::string>{"1,1,1"});
  CHECK(names(7, 1, 5) == std::vector<std::string>{"5"});
}

TEST_CASE("admissible partitions match a plain filter") {
  for (long p : {2L, 3L, 5L, 7L, 11L})
    for (int k : {2, 3})
      for (int R = 3; R <= 12; ++R) {
        std::set<std::vector<int>> expected;
        for (auto& parts : brute::partitions(R))
          if (admissible_by_hand(p, k, parts, R)) expected.insert(parts);
        std::set<std::vector<int>> got;
        for (auto& x : admissible_partitions(p, k, R)) {
          CHECK(x.total() == R);
          CHECK_FALSE(admissibility_violation(p, k, x).has_value());
          got.insert(std::vector<int>(x.parts().begin(), x.parts().end()));
        }
        CHECK(got == expected);
      }
}

TEST_CASE("small primes always admit the unitary and near-unitary types") {
  for (int R = 4; R <= 10; ++R)
    for (long p = next_prime(R - 1); p < 30; p = next_prime(p)) {
      auto list = admissible_partitions(p, 2, R);
      std::vector<int> ones(R, 1), two(R - 1, 1);
      two[0] = 2;
      CHECK(std::find(list.begin(), list.end(), PartitionType(ones)) != list.end());
      CHECK(std::find(list.begin(), list.end(), PartitionType(two)) != list.end());
    }
}

TEST_CASE("violations name the restriction") {
  auto v = admissibility_violation(5, 2, P("4,1"));
  REQUIRE(v);
  CHECK(v->find("restriction 2") != std::string::npos);
  v = admissibility_violation(3, 2, P("1,1,1,1,1"));
  REQUIRE(v);
  CHECK(v->find("restriction 1") != std::string::npos);
  v = admissibility_violation(5, 2, P("5"));
  REQUIRE(v);
  CHECK(v->find("restriction 1") != std::string::npos);
}

TEST_CASE("the largest-part bound never fires on its own") {
  for (long p : {3L, 5L, 7L})
    for (int k : {2, 3})
      for (int R = 3; R <= 10; ++R)
        for (auto& parts : brute::partitions(R))
          if (parts.front() > R - k) CHECK(admissibility_violation(p, k, PartitionType(parts)).has_value());
}

TEST_CASE("marking count") {
  CHECK(marking_count(7, 5) == 10);
  CHECK(marking_count(5, 3) == 1);
  CHECK(marking_count(5, 2) == 1);
  CHECK(marking_count(5, 6) == 1);
  CHECK_THROWS_AS(marking_count(5, 7), AdmissibilityError);
}
