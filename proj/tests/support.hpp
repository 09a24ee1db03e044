#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rankeval/corpus.hpp"

namespace rankeval::test {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("rankeval_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline AuthorSlot domestic(int position, std::string university, std::string sds,
                           std::string researcher = {}) {
  AuthorSlot slot;
  slot.position = position;
  slot.is_domestic_academic = true;
  slot.university_id = std::move(university);
  slot.sds_id = std::move(sds);
  if (!researcher.empty()) slot.researcher_id = std::move(researcher);
  return slot;
}

inline AuthorSlot external(int position) {
  AuthorSlot slot;
  slot.position = position;
  return slot;
}

inline PublicationRecord publication(std::string id, int year, std::int64_t citations,
                                     std::vector<CategoryWeight> categories,
                                     std::vector<AuthorSlot> authors, int total_authors) {
  PublicationRecord pub;
  pub.pub_id = std::move(id);
  pub.year = year;
  pub.citations = citations;
  pub.categories = std::move(categories);
  pub.authors = std::move(authors);
  pub.total_author_count = total_authors;
  return pub;
}

// Two UDAs: U1 = {S1, S2} (not life science), U2 = {S3} (life science).
// Macro M1 = {U1, U2}.
inline Taxonomy small_taxonomy() {
  Taxonomy t;
  t.sds_to_uda = {{"S1", "U1"}, {"S2", "U1"}, {"S3", "U2"}};
  t.uda_to_macro = {{"U1", "M1"}, {"U2", "M1"}};
  t.life_science_sds = {"S3"};
  t.life_science_categories = {"C3"};
  return t;
}

// Random corpus with at most `max_pubs` publications over three universities
// and the small taxonomy. Every domestic author carries a researcher id from
// the roster. Categories C1, C2 belong to S1, S2 and C3 to the life-science S3.
inline Corpus random_small_corpus(std::mt19937_64& rng, int max_pubs, bool single_category = false) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Corpus c;
  c.window = {2001, 2003};
  c.taxonomy = small_taxonomy();
  const std::vector<std::string> unis{"A", "B", "C"};
  const std::vector<std::string> sds{"S1", "S2", "S3"};
  std::vector<StaffEntry> roster;
  for (const auto& u : unis) {
    for (const auto& s : sds) {
      const int headcount = pick(1, 2);
      for (int h = 0; h < headcount; ++h) {
        roster.push_back({u + s + "r" + std::to_string(h), u, s, static_cast<double>(pick(1, 3))});
      }
    }
  }
  c.staff = roster;
  const int pubs = pick(1, max_pubs);
  for (int p = 0; p < pubs; ++p) {
    const auto& lead = roster[static_cast<std::size_t>(pick(0, static_cast<int>(roster.size()) - 1))];
    const int n = pick(1, 7);
    std::vector<AuthorSlot> authors;
    std::vector<std::string> used{lead.researcher_id};
    const int lead_pos = pick(1, n);
    for (int pos = 1; pos <= n; ++pos) {
      if (pos == lead_pos) {
        authors.push_back(domestic(pos, lead.university_id, lead.sds_id, lead.researcher_id));
        continue;
      }
      const int kind = pick(0, 2);
      if (kind == 0) {
        const auto& r = roster[static_cast<std::size_t>(pick(0, static_cast<int>(roster.size()) - 1))];
        if (std::find(used.begin(), used.end(), r.researcher_id) == used.end()) {
          used.push_back(r.researcher_id);
          authors.push_back(domestic(pos, r.university_id, r.sds_id, r.researcher_id));
          continue;
        }
      }
      if (kind == 1) authors.push_back(external(pos));
    }
    std::vector<CategoryWeight> cats;
    const std::string home = "C" + lead.sds_id.substr(1);
    if (!single_category && pick(0, 2) == 0) {
      const std::string other = home == "C1" ? "C2" : "C1";
      const double w = pick(1, 9) / 10.0;
      cats = {{home, w}, {other, 1.0 - w}};
    } else {
      cats = {{home, 1.0}};
    }
    c.publications.push_back(publication("P" + std::to_string(p + 1), pick(2001, 2002),
                                         pick(0, 40), cats, authors, n));
  }
  return validate_corpus(std::move(c));
}

}  // namespace rankeval::test
