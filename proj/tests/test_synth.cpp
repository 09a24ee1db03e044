#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "rankeval/error.hpp"
#include "rankeval/peer_rating.hpp"
#include "rankeval/pipeline.hpp"
#include "rankeval/synth.hpp"
#include "support.hpp"

using namespace rankeval;

namespace {

SynthParams small(std::uint64_t seed) {
  SynthParams p;
  p.seed = seed;
  p.universities = 12;
  p.udas = 2;
  p.sds_per_uda = 2;
  return p;
}

}  // namespace

TEST(Synth, SameSeedSameCorpus) {
  EXPECT_EQ(generate_synthetic(small(42)).corpus, generate_synthetic(small(42)).corpus);
  EXPECT_NE(generate_synthetic(small(42)).corpus, generate_synthetic(small(43)).corpus);
}

TEST(Synth, OutputIsValidAndReloads) {
  const auto s = generate_synthetic(small(5));
  EXPECT_FALSE(s.corpus.publications.empty());
  EXPECT_EQ(validate_corpus(s.corpus), s.corpus);
  test::TempDir dir("synth");
  write_synthetic(s, dir.path());
  EXPECT_EQ(load_corpus(CorpusPaths::in_directory(dir.path()), s.corpus.window), s.corpus);
  EXPECT_TRUE(std::filesystem::exists(dir / "latent_quality.csv"));
}

TEST(Synth, InvalidParameters) {
  auto p = small(1);
  p.gradient = 1.5;
  EXPECT_THROW(generate_synthetic(p), ValidationError);
  p = small(1);
  p.universities = 0;
  EXPECT_THROW(generate_synthetic(p), ValidationError);
}

TEST(Synth, ScoresEndToEnd) {
  const auto run = run_scoring(generate_synthetic(small(9)).corpus);
  EXPECT_FALSE(run.university.entries.empty());
  for (const auto& [key, e] : run.university.entries) EXPECT_TRUE(std::isfinite(e.productivity));
}

TEST(Synth, NoiselessPeerRatingsFollowQuality) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto p = small(seed);
    p.peer_noise = 0.0;
    const auto s = generate_synthetic(p);
    std::map<std::string, double> vtr;
    for (const auto& r : rate_outcomes(pool_by_university(s.corpus.peer_outcomes))) vtr[r.university_id] = r.rating;
    for (const auto& [a, qa] : s.latent_quality) {
      for (const auto& [b, qb] : s.latent_quality) {
        if (qa > qb && vtr.contains(a) && vtr.contains(b)) EXPECT_GE(vtr[a], vtr[b]);
      }
    }
  }
}

TEST(Synth, ZeroGradientDecouplesLatitude) {
  double total = 0.0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    SynthParams p;
    p.seed = static_cast<std::uint64_t>(seed);
    p.gradient = 0.0;
    p.universities = 150;
    p.udas = 1;
    p.sds_per_uda = 1;
    p.categories_per_sds = 1;
    p.life_science_udas = 0;
    p.staff_mean = 3.0;
    p.pubs_per_researcher = 1.0;
    p.inactive_sds_share = 0.0;
    const auto s = generate_synthetic(p);
    std::vector<RankingList> lists{build_ranking("LAT", s.corpus.indicators.at("LAT").values,
                                                 Direction::higher_is_better),
                                   ranking_from_scores(run_scoring(s.corpus).university, "all", "P")};
    const auto m = correlation_matrix(lists);
    total += std::abs(m.at(0, 1).rho);
  }
  EXPECT_LT(total / seeds, 0.1);
}

TEST(Synth, NoiselessPeerRatingsRankLikeQualityOnTieFreeDraws) {
  int tie_free = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    auto p = small(seed);
    p.universities = 4;
    p.peer_noise = 0.0;
    const auto s = generate_synthetic(p);
    std::map<std::string, double> vtr;
    for (const auto& r : rate_outcomes(pool_by_university(s.corpus.peer_outcomes))) vtr[r.university_id] = r.rating;
    std::set<double> distinct;
    for (const auto& [u, r] : vtr) distinct.insert(r);
    if (vtr.size() != 4 || distinct.size() != 4) continue;
    ++tie_free;
    const auto m = correlation_matrix({build_ranking("VTR", vtr, Direction::higher_is_better),
                                       build_ranking("Q", s.latent_quality, Direction::higher_is_better)});
    EXPECT_DOUBLE_EQ(m.at(0, 1).rho, 1.0) << "seed " << seed;
  }
  EXPECT_GT(tie_free, 0);
}
