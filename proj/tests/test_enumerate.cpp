#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "padil/enumerate.hpp"
#include "support.hpp"

using namespace padil;

namespace {

IntPolynomial P(const char* s) { return parse_polynomial(s); }

const char* const kBounds[] = {"x^2-3x+1", "x^4-2x^3-2x+1", "x^4-x^3-x^2-x+1", "x^6-x^5-4x^3-x+1", "x^7-2x^4-2x^3+1",
                               "x^8-2x^5-2x^3+1"};

std::size_t count(int degree, const char* bound) {
  return enumerate_cached({degree, P(bound), EnumerationMode::pruned}, test::cache_dir(), 1).count();
}

std::vector<IntPolynomial> sorted(std::vector<IntPolynomial> v) {
  detail::canonical_sort(v);
  return v;
}

}  // namespace

TEST(Enumerate, SmallDegreeCounts) {
  EXPECT_EQ(count(2, "x^2-3x+1"), 0u);
  EXPECT_EQ(count(6, "x^7-2x^4-2x^3+1"), 2u);
  EXPECT_EQ(count(6, "x^8-2x^5-2x^3+1"), 2u);
  EXPECT_EQ(count(6, "x^6-x^5-4x^3-x+1"), 41u);
  EXPECT_EQ(count(8, "x^7-2x^4-2x^3+1"), 21u);
  EXPECT_EQ(count(8, "x^8-2x^5-2x^3+1"), 15u);
}

TEST(Enumerate, DegreeFourListBelowTwoPointTwoNine) {
  const auto list = enumerate_perron({4, P("x^4-2x^3-2x+1"), EnumerationMode::pruned}, 1);
  EXPECT_EQ(list.entries, sorted({P("x^4-x^3-x^2-x+1"), P("x^4-2x^3+x^2-2x+1"), P("x^4-x^3-2x^2-x+1"),
                                  P("x^4-3x^3+3x^2-3x+1")}));
}

TEST(Enumerate, DegreeSixListBelowOnePointSevenTwo) {
  const auto list = enumerate_perron({6, P("x^4-x^3-x^2-x+1"), EnumerationMode::pruned}, 1);
  EXPECT_EQ(list.entries, sorted({P("x^6+x^5-x^4-3x^3-x^2+x+1"), P("x^6-x^4-x^3-x^2+1"), P("x^6-x^5+x^4-3x^3+x^2-x+1"),
                                  P("x^6-x^5-x^3-x+1"), P("x^6-x^5-x^4+x^3-x^2-x+1"), P("x^6-2x^5+3x^4-5x^3+3x^2-2x+1"),
                                  P("x^6-x^4-2x^3-x^2+1"), P("x^6-2x^5+2x^4-3x^3+2x^2-2x+1"),
                                  P("x^6-x^5+x^4-4x^3+x^2-x+1")}));
}

// Lists produced by an independent floating-point/symbolic oracle and frozen.
TEST(Enumerate, MatchesFrozenOracleLists) {
  EXPECT_EQ(enumerate_cached({6, P("x^6-x^5-4x^3-x+1"), EnumerationMode::pruned}, test::cache_dir(), 1).entries,
            sorted(test::load_oracle("oracle_d6_b1_-1_0_-4_0_-1_1.txt")));
  EXPECT_EQ(enumerate_cached({8, P("x^4-x^3-x^2-x+1"), EnumerationMode::pruned}, test::cache_dir(), 1).entries,
            sorted(test::load_oracle("oracle_d8_b1_-1_-1_-1_1.txt")));
}

TEST(Enumerate, DegreeEightBelowOnePointSevenTwoHas153) {
  EXPECT_EQ(count(8, "x^4-x^3-x^2-x+1"), 153u);
}

TEST(Enumerate, DegreeTenCounts) {
  EXPECT_EQ(count(10, "x^7-2x^4-2x^3+1"), 227u);
  EXPECT_EQ(count(10, "x^8-2x^5-2x^3+1"), 129u);
}

TEST(Enumerate, PrunedEqualsBruteForceUpToDegreeEight) {
  for (int degree = 2; degree <= 8; degree += 2)
    for (const char* b : kBounds) {
      // The degree-8 boxes for the two largest bounds take minutes; their counts are frozen below.
      if (degree == 8 && perron_root(P(b))->value() > 2.1) continue;
      const auto pruned = enumerate_cached({degree, P(b), EnumerationMode::pruned}, test::cache_dir(), 1);
      const auto brute = brute_force_oracle(degree, P(b), 1);
      EXPECT_EQ(pruned.entries, brute.entries) << "degree " << degree << " bound " << b;
    }
}

TEST(Enumerate, DegreeEightCountsForWideBounds) {
  EXPECT_EQ(enumerate_cached({8, P("x^2-3x+1"), EnumerationMode::pruned}, test::cache_dir(), 1).count(), 11171u);
  EXPECT_EQ(enumerate_cached({8, P("x^4-2x^3-2x+1"), EnumerationMode::pruned}, test::cache_dir(), 1).count(), 3237u);
}

TEST(Enumerate, EveryEntryIsReciprocalPerronAndBelowBound) {
  const IntPolynomial bound = P("x^6-x^5-4x^3-x+1");
  const auto list = enumerate_perron({6, bound, EnumerationMode::pruned}, 1);
  for (const auto& p : list.entries) {
    EXPECT_TRUE(is_reciprocal(p));
    const auto d = perron_root(p);
    ASSERT_TRUE(d.has_value());
    EXPECT_TRUE(d->is_perron);
    EXPECT_EQ(compare_perron(p, bound), Ordering::less);
  }
  EXPECT_TRUE(std::is_sorted(list.entries.begin(), list.entries.end()));
}

TEST(Enumerate, RejectsInvalidQueries) {
  EXPECT_THROW(enumerate_perron({3, P("x^2-3x+1"), EnumerationMode::pruned}, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_perron({0, P("x^2-3x+1"), EnumerationMode::pruned}, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_perron({4, P("x^2-x+1"), EnumerationMode::pruned}, 1), std::invalid_argument);
  EXPECT_THROW(brute_force_oracle(10, P("x^2-3x+1"), 1), std::invalid_argument);
}

TEST(Enumerate, WorkerCountDoesNotChangeOutput) {
  const EnumerationQuery q{8, P("x^7-2x^4-2x^3+1"), EnumerationMode::pruned};
  const auto one = enumerate_perron(q, 1);
  EXPECT_EQ(enumerate_perron(q, 3).entries, one.entries);
  EXPECT_EQ(to_json(enumerate_perron(q, 4)).dump(), to_json(one).dump());
}

TEST(EnumerateCache, KeyedByExactCoefficients) {
  EXPECT_EQ(cache_key(8, P("x^8-2x^5-2x^3+1")), "perron_d8_b1_0_0_-2_0_-2_0_0_1.json");
}

TEST(EnumerateCache, RoundTripAndRecovery) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "padil-cache-test";
  fs::remove_all(dir);
  const EnumerationQuery q{6, P("x^4-x^3-x^2-x+1"), EnumerationMode::pruned};
  const auto fresh = enumerate_cached(q, dir.string(), 1);
  const fs::path file = dir / cache_key(6, q.bound);
  ASSERT_TRUE(fs::exists(file));
  EXPECT_EQ(list_from_json(nlohmann::json::parse(std::ifstream(file))).entries, fresh.entries);
  EXPECT_EQ(enumerate_cached(q, dir.string(), 1).entries, fresh.entries);

  std::ofstream(file) << "{ not json";
  EXPECT_EQ(enumerate_cached(q, dir.string(), 1).entries, fresh.entries);
  EXPECT_EQ(list_from_json(nlohmann::json::parse(std::ifstream(file))).entries, fresh.entries);
  fs::remove_all(dir);
}

TEST(EnumerateCache, JsonCarriesVersionAndQuery) {
  const auto list = enumerate_perron({4, P("x^4-2x^3-2x+1"), EnumerationMode::pruned}, 1);
  const auto j = to_json(list);
  EXPECT_EQ(j.at("format_version"), kCacheFormatVersion);
  EXPECT_EQ(j.at("count"), 4);
  EXPECT_EQ(j.at("query").at("degree"), 4);
  nlohmann::json bad = j;
  bad["format_version"] = 99;
  EXPECT_THROW(list_from_json(bad), std::runtime_error);
}
