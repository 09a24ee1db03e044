#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "rankeval/error.hpp"
#include "rankeval/scoring.hpp"
#include "support.hpp"

using namespace rankeval;
using test::domestic;
using test::external;
using test::publication;

namespace {

Corpus corpus_with(std::vector<PublicationRecord> pubs) {
  Corpus c;
  c.window = {2001, 2003};
  c.taxonomy = test::small_taxonomy();
  for (const auto& u : {"A", "B", "C", "D", "E"}) {
    for (const auto& s : {"S1", "S2", "S3"}) c.staff.push_back({std::string(u) + s, u, s, 3.0});
  }
  c.publications = std::move(pubs);
  return validate_corpus(std::move(c));
}

PublicationRecord solo(const std::string& id, std::int64_t cites, const std::string& cat = "C1") {
  return publication(id, 2001, cites, {{cat, 1.0}}, {domestic(1, "A", "S1")}, 1);
}

CitationBaseline baseline_of(const std::vector<std::int64_t>& cites) {
  std::vector<PublicationRecord> pubs;
  for (std::size_t i = 0; i < cites.size(); ++i) pubs.push_back(solo("P" + std::to_string(i), cites[i]));
  return compute_baselines(corpus_with(pubs)).at({2001, "C1"});
}

}  // namespace

TEST(Baselines, OddCountMedianAndMean) {
  const auto b = baseline_of({0, 2, 10});
  EXPECT_EQ(b.median, 2.0);
  EXPECT_EQ(b.mean, 4.0);
}

TEST(Baselines, EvenCountMidpoint) { EXPECT_EQ(baseline_of({1, 3}).median, 2.0); }

TEST(Baselines, Singleton) {
  const auto b = baseline_of({5});
  EXPECT_EQ(b.median, 5.0);
  EXPECT_EQ(b.count, 1);
}

TEST(Baselines, MultiCategoryPublicationFeedsEachCell) {
  auto p = publication("P", 2001, 6, {{"C1", 0.5}, {"C2", 0.5}}, {domestic(1, "A", "S1")}, 1);
  const auto t = compute_baselines(corpus_with({p, solo("Q", 2)}));
  EXPECT_EQ(t.at({2001, "C1"}).count, 2);
  EXPECT_EQ(t.at({2001, "C2"}).count, 1);
  EXPECT_EQ(t.at({2001, "C2"}).median, 6.0);
}

TEST(Baselines, MedianMatchesSortOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> v(1 + rng() % 40);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % 100);
    std::vector<double> d(v.begin(), v.end());
    auto copy = v;
    EXPECT_EQ(median_of(copy), oracle::median(d));
  }
}

TEST(Standardize, SingleCategoryRatio) {
  BaselineTable t{{{2001, "C1"}, {5.0, 5.0, 1}}};
  EXPECT_DOUBLE_EQ(standardize_citations(solo("P", 10), t).value, 2.0);
}

TEST(Standardize, WeightedAverageOverCategories) {
  BaselineTable t{{{2001, "C1"}, {4.0, 4.0, 1}}, {{2001, "C2"}, {5.0, 5.0, 1}}};
  auto p = publication("P", 2001, 10, {{"C1", 0.5}, {"C2", 0.5}}, {domestic(1, "A", "S1")}, 1);
  EXPECT_NEAR(standardize_citations(p, t).value, 0.5 * (10.0 / 4) + 0.5 * (10.0 / 5), 1e-12);
  EXPECT_NEAR(standardize_citations(p, t).value, 2.25, 1e-12);
}

TEST(Standardize, ZeroCitationsGiveZero) {
  BaselineTable t{{{2001, "C1"}, {3.0, 4.0, 3}}};
  EXPECT_EQ(standardize_citations(solo("P", 0), t).value, 0.0);
}

TEST(Standardize, ZeroMedianFallsBackToMean) {
  BaselineTable t{{{2001, "C1"}, {0.0, 2.0, 3}}};
  const auto s = standardize_citations(solo("P", 6), t);
  EXPECT_DOUBLE_EQ(s.value, 3.0);
  EXPECT_FALSE(s.raw_fallback);
}

TEST(Standardize, MissingBaselineIsComputationError) {
  EXPECT_THROW(standardize_citations(solo("P", 6), {}), ComputationError);
}

TEST(Fractions, NonLifeScienceShareOfTotalAuthors) {
  auto p = publication("P", 2001, 1, {{"C1", 1.0}},
                       {domestic(1, "A", "S1"), domestic(2, "A", "S1"), external(3)}, 4);
  const auto credit = author_fractions(p, test::small_taxonomy());
  EXPECT_DOUBLE_EQ(credit.groups.at({"A", "S1"}), 0.5);
  EXPECT_DOUBLE_EQ(credit.external_residual, 0.5);
}

TEST(Fractions, LifeScienceFirstAndLastSameUniversity) {
  auto p = publication("P", 2001, 1, {{"C3", 1.0}},
                       {domestic(1, "X", "S3"), domestic(2, "A", "S3"), domestic(3, "B", "S3"),
                        domestic(4, "C", "S3"), domestic(5, "X", "S3")},
                       5);
  const auto credit = author_fractions(p, test::small_taxonomy());
  EXPECT_NEAR(credit.groups.at({"X", "S3"}), 0.8, 1e-12);
  for (const auto* u : {"A", "B", "C"}) EXPECT_NEAR(credit.groups.at({u, "S3"}), 0.2 / 3, 1e-12);
  EXPECT_NEAR(credit.external_residual, 0.0, 1e-12);
}

TEST(Fractions, LifeScienceFirstAndLastDifferentUniversities) {
  const auto w = positional_weights(6, false);
  const std::vector<double> expected{0.30, 0.15, 0.05, 0.05, 0.15, 0.30};
  ASSERT_EQ(w.size(), expected.size());
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], expected[i], 1e-12);
}

TEST(Fractions, ShortBylinesRenormalize) {
  EXPECT_EQ(positional_weights(1, false), std::vector<double>{1.0});
  const auto two = positional_weights(2, true);
  EXPECT_NEAR(two[0], 0.5, 1e-12);
  const auto three = positional_weights(3, false);
  EXPECT_NEAR(three[0], 30.0 / 75, 1e-12);
  EXPECT_NEAR(three[1], 15.0 / 75, 1e-12);
  const auto four = positional_weights(4, false);
  EXPECT_NEAR(four[1], 15.0 / 90, 1e-12);
}

TEST(Fractions, PositionalWeightsMatchOracle) {
  for (int n = 1; n <= 40; ++n) {
    for (bool same : {true, false}) {
      const auto w = positional_weights(n, same);
      ASSERT_EQ(w.size(), static_cast<std::size_t>(n));
      double total = 0.0;
      for (int pos = 1; pos <= n; ++pos) {
        EXPECT_NEAR(w[static_cast<std::size_t>(pos - 1)], oracle::position_credit(pos, n, same), 1e-12)
            << "n=" << n << " pos=" << pos;
        total += w[static_cast<std::size_t>(pos - 1)];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Fractions, ConservationOverRandomBylines) {
  std::mt19937_64 rng(5);
  const auto taxonomy = test::small_taxonomy();
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const bool life = rng() % 2 == 0;
    std::vector<AuthorSlot> slots;
    for (int pos = 1; pos <= n; ++pos) {
      const auto r = rng() % 3;
      if (r == 0) slots.push_back(domestic(pos, std::string(1, static_cast<char>('A' + rng() % 3)), life ? "S3" : "S1"));
      if (r == 1) slots.push_back(external(pos));
    }
    if (slots.empty()) slots.push_back(domestic(1, "A", life ? "S3" : "S1"));
    const auto pub = publication("P", 2001, 1, {{life ? "C3" : "C1", 1.0}}, slots, n);
    const auto credit = author_fractions(pub, taxonomy);
    double total = credit.external_residual;
    for (const auto& [k, f] : credit.groups) total += f;
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(CreditShares, SingleAuthorComposition) {
  const auto c = corpus_with({solo("P1", 4), solo("P2", 2), solo("P3", 0)});
  const auto shares = credit_shares(c, compute_baselines(c));
  ASSERT_EQ(shares.size(), 3u);
  EXPECT_EQ(shares[0].pub_id, "P1");
  EXPECT_DOUBLE_EQ(shares[0].fraction, 1.0);
  EXPECT_DOUBLE_EQ(shares[0].standardized_value, 2.0);
}

TEST(CreditShares, SplitAcrossGroups) {
  auto p = publication("P1", 2001, 2, {{"C1", 1.0}}, {domestic(1, "A", "S1"), domestic(2, "B", "S1")}, 2);
  auto q = publication("P2", 2001, 2, {{"C1", 1.0}}, {domestic(1, "A", "S1")}, 1);
  const auto c = corpus_with({p, q});
  const auto shares = credit_shares(c, compute_baselines(c));
  ASSERT_EQ(shares.size(), 3u);
  EXPECT_DOUBLE_EQ(shares[0].fraction, 0.5);
  EXPECT_DOUBLE_EQ(shares[1].fraction, 0.5);
  EXPECT_DOUBLE_EQ(shares[0].standardized_value, 1.0);
}

TEST(CreditShares, EmptyCorpus) {
  const auto c = corpus_with({});
  EXPECT_TRUE(credit_shares(c, compute_baselines(c)).empty());
}

TEST(CreditShares, MatchOracleOnRandomCorpora) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = test::random_small_corpus(rng, 6);
    const auto shares = credit_shares(c, compute_baselines(c));
    for (const auto& s : shares) {
      const auto& pub = *std::find_if(c.publications.begin(), c.publications.end(),
                                      [&](const auto& p) { return p.pub_id == s.pub_id; });
      EXPECT_NEAR(s.standardized_value, oracle::standardized(c, pub), 1e-9);
      EXPECT_NEAR(s.fraction, oracle::fraction(c, pub, s.university_id, s.sds_id), 1e-9);
    }
  }
}
