#include <gtest/gtest.h>

#include <random>

#include "rankeval/corpus.hpp"
#include "rankeval/error.hpp"
#include "support.hpp"

using namespace rankeval;
using rankeval::test::TempDir;
using rankeval::test::write_file;

namespace {

struct Fixture {
  std::string publications = "pub_id,year,doc_type,citations,total_author_count\nP1,2002,article,4,1\n";
  std::string categories = "pub_id,category_id,weight\nP1,C1,1\n";
  std::string authors =
      "pub_id,position,is_domestic_academic,university_id,sds_id,researcher_id\nP1,1,1,UA,S1,R1\n";
  std::string staff = "researcher_id,university_id,sds_id,years_on_staff\nR1,UA,S1,3\n";
  std::string taxonomy = "sds_id,uda_id,is_life_science\nS1,U1,0\n";

  void write(const TempDir& dir) const {
    write_file(dir / "publications.csv", publications);
    write_file(dir / "pub_categories.csv", categories);
    write_file(dir / "pub_authors.csv", authors);
    write_file(dir / "staff.csv", staff);
    write_file(dir / "taxonomy.csv", taxonomy);
  }
};

Corpus load(const Fixture& f, Window window = {2001, 2003}) {
  TempDir dir("corpus");
  f.write(dir);
  return load_corpus(CorpusPaths::in_directory(dir.path()), window);
}

std::string error_of(const Fixture& f) {
  try {
    load(f);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Window, ParseAndFormat) {
  EXPECT_EQ(Window::parse("2001-2003"), (Window{2001, 2003}));
  EXPECT_EQ(Window::parse("2002"), (Window{2002, 2002}));
  EXPECT_EQ(Window::parse("2001-2003").length(), 3);
  EXPECT_EQ((Window{2001, 2003}).to_string(), "2001-2003");
  EXPECT_THROW(Window::parse("2003-2001"), ValidationError);
  EXPECT_THROW(Window::parse("abc"), ValidationError);
}

TEST(LoadCorpus, MinimalFixture) {
  const auto c = load(Fixture{});
  EXPECT_EQ(c.publications.size(), 1u);
  EXPECT_EQ(c.staff.size(), 1u);
  EXPECT_EQ(c.rejected_outside_window, 0u);
}

TEST(LoadCorpus, WeightSumViolationNamesSum) {
  Fixture f;
  f.categories = "pub_id,category_id,weight\nP1,C1,0.5\nP1,C2,0.6\n";
  const auto msg = error_of(f);
  EXPECT_NE(msg.find("weights sum 1.1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("pub_categories.csv"), std::string::npos) << msg;
}

TEST(LoadCorpus, BlankWeightsDefaultToEqual) {
  Fixture f;
  f.categories = "pub_id,category_id,weight\nP1,C1,\nP1,C2,\n";
  const auto c = load(f);
  ASSERT_EQ(c.publications[0].categories.size(), 2u);
  EXPECT_DOUBLE_EQ(c.publications[0].categories[0].weight, 0.5);
}

TEST(LoadCorpus, WindowFilterCountsRejections) {
  Fixture f;
  f.publications = "pub_id,year,doc_type,citations,total_author_count\nP1,1999,article,4,1\n";
  const auto c = load(f);
  EXPECT_TRUE(c.publications.empty());
  EXPECT_EQ(c.rejected_outside_window, 1u);
}

TEST(LoadCorpus, DanglingSdsRejected) {
  Fixture f;
  f.staff = "researcher_id,university_id,sds_id,years_on_staff\nR1,UA,S9,3\n";
  EXPECT_FALSE(error_of(f).empty());
}

TEST(LoadCorpus, AuthorUniversityOutsideRosterRejected) {
  Fixture f;
  f.authors = "pub_id,position,is_domestic_academic,university_id,sds_id,researcher_id\nP1,1,1,UZ,S1,\n";
  const auto msg = error_of(f);
  EXPECT_NE(msg.find("pub_authors.csv:2"), std::string::npos) << msg;
}

TEST(LoadCorpus, DuplicatePubIdRejected) {
  Fixture f;
  f.publications += "P1,2002,article,1,1\n";
  const auto msg = error_of(f);
  EXPECT_NE(msg.find("publications.csv:3"), std::string::npos) << msg;
}

TEST(LoadCorpus, BadFieldNamesLine) {
  Fixture f;
  f.publications = "pub_id,year,doc_type,citations,total_author_count\nP1,2002,article,-4,1\n";
  EXPECT_NE(error_of(f).find("publications.csv:2"), std::string::npos);
}

TEST(LoadCorpus, TooManyAuthorsRejected) {
  Fixture f;
  f.authors += "P1,2,0,,,\n";
  EXPECT_FALSE(error_of(f).empty());
}

TEST(LoadCorpus, DuplicatePositionRejected) {
  Fixture f;
  f.publications = "pub_id,year,doc_type,citations,total_author_count\nP1,2002,article,4,2\n";
  f.authors += "P1,1,0,,,\n";
  EXPECT_FALSE(error_of(f).empty());
}

TEST(LoadCorpus, StaffYearsBeyondWindowRejected) {
  Fixture f;
  f.staff = "researcher_id,university_id,sds_id,years_on_staff\nR1,UA,S1,4\n";
  EXPECT_NE(error_of(f).find("staff.csv:2"), std::string::npos);
}

TEST(LoadCorpus, PublicationWithoutDomesticAuthorDropped) {
  Fixture f;
  f.publications += "P2,2002,article,1,2\n";
  f.categories += "P2,C1,1\n";
  f.authors += "P2,1,0,,,\n";
  const auto c = load(f);
  EXPECT_EQ(c.publications.size(), 1u);
  EXPECT_EQ(c.rejected_no_domestic, 1u);
}

TEST(LoadCorpus, MissingRequiredFileFails) {
  TempDir dir("missing");
  Fixture{}.write(dir);
  std::filesystem::remove(dir / "staff.csv");
  EXPECT_ANY_THROW(load_corpus(CorpusPaths::in_directory(dir.path()), {2001, 2003}));
}

TEST(LoadCorpus, WriteThenLoadRoundTrips) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto c = test::random_small_corpus(rng, 8);
    c.peer_outcomes = {{"A", "U1", 1, 2, 0, 0, 3}, {"B", "U2", 0, 0, 1, 1, 2}};
    c.indicators["LAT"] = {"LAT", Direction::higher_is_better, {{"A", 45.1}, {"B", 38.0}}};
    TempDir dir("roundtrip");
    write_corpus(c, dir.path());
    const auto back = load_corpus(CorpusPaths::in_directory(dir.path()), c.window);
    EXPECT_EQ(back, c);
  }
}

TEST(LoadCorpus, DeterministicAcrossLoads) {
  Fixture f;
  EXPECT_EQ(load(f), load(f));
}

TEST(PeerOutcomes, ValidationReport) {
  const auto checks = validate_peer_outcomes({{"TV", "MAT", 17, 5, 1, 0, 23}, {"X", "MAT", 1, 1, 0, 0, 1}});
  ASSERT_EQ(checks.size(), 2u);
  EXPECT_TRUE(checks[0].pass);
  EXPECT_FALSE(checks[1].pass);
  EXPECT_TRUE(validate_peer_outcomes({}).empty());
}

TEST(PeerOutcomes, StrictReaderNamesLine) {
  TempDir dir("peer");
  write_file(dir / "p.csv", "university_id,uda_id,E,G,A,L,T\nA,U,1,0,0,0,1\nB,U,1,1,0,0,1\n");
  try {
    read_peer_outcomes(dir / "p.csv", true);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_EQ(read_peer_outcomes(dir / "p.csv").size(), 2u);
}

TEST(PeerOutcomes, TotalDefaultsToSum) {
  TempDir dir("peer");
  write_file(dir / "p.csv", "university_id,uda_id,E,G,A,L\nA,U,1,2,3,4\n");
  const auto rows = read_peer_outcomes(dir / "p.csv", true);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].total, 10);
}

TEST(Indicators, InconsistentDirectionRejected) {
  TempDir dir("ind");
  write_file(dir / "i.csv",
             "indicator_name,direction,university_id,value\nLAT,higher_is_better,A,1\n"
             "LAT,lower_is_better,B,2\n");
  EXPECT_THROW(read_indicators(dir / "i.csv"), ValidationError);
}

TEST(Indicators, DuplicateUniversityRejected) {
  TempDir dir("ind");
  write_file(dir / "i.csv",
             "indicator_name,direction,university_id,value\nLAT,higher_is_better,A,1\n"
             "LAT,higher_is_better,A,2\n");
  EXPECT_THROW(read_indicators(dir / "i.csv"), ValidationError);
}

TEST(LifeScience, CategoryListTakesPrecedence) {
  auto t = test::small_taxonomy();
  auto pub = test::publication("P", 2001, 1, {{"C1", 1.0}}, {test::domestic(1, "A", "S3")}, 1);
  EXPECT_FALSE(is_life_science(pub, t));
  t.life_science_categories.clear();
  EXPECT_TRUE(is_life_science(pub, t));
}
