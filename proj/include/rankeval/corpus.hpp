#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rankeval {

// Inclusive range of calendar years, e.g. 2001-2003.
struct Window {
  int first_year = 0;
  int last_year = 0;

  int length() const noexcept { return last_year - first_year + 1; }
  bool contains(int year) const noexcept { return year >= first_year && year <= last_year; }
  bool operator==(const Window&) const = default;

  // Parses "2001-2003" or a single year "2002".
  static Window parse(const std::string& text);
  std::string to_string() const;
};

enum class DocType { article, review, proceedings };

std::string to_string(DocType type);
std::optional<DocType> parse_doc_type(const std::string& text);

struct CategoryWeight {
  std::string category_id;
  double weight = 0.0;
  bool operator==(const CategoryWeight&) const = default;
};

// One listed byline entry. External co-authors may appear as anonymous slots
// or not at all; total_author_count on the publication always covers them.
struct AuthorSlot {
  std::optional<int> position;  // 1-based; unknown positions are allowed outside life sciences
  bool is_domestic_academic = false;
  std::optional<std::string> university_id;
  std::optional<std::string> sds_id;
  std::optional<std::string> researcher_id;
  bool operator==(const AuthorSlot&) const = default;
};

struct PublicationRecord {
  std::string pub_id;
  int year = 0;
  DocType doc_type = DocType::article;
  std::int64_t citations = 0;
  std::vector<CategoryWeight> categories;  // sorted by category_id
  std::vector<AuthorSlot> authors;         // sorted by position, unknown positions last
  int total_author_count = 1;
  bool operator==(const PublicationRecord&) const = default;
};

struct StaffEntry {
  std::string researcher_id;
  std::string university_id;
  std::string sds_id;
  double years_on_staff = 0.0;
  bool operator==(const StaffEntry&) const = default;
};

struct Taxonomy {
  std::map<std::string, std::string> sds_to_uda;
  std::map<std::string, std::string> uda_to_macro;
  std::set<std::string> life_science_sds;
  std::set<std::string> life_science_categories;
  bool operator==(const Taxonomy&) const = default;

  const std::string* uda_of(const std::string& sds) const;
  const std::string* macro_of(const std::string& uda) const;
};

// Life-science publications use positional credit. A publication is life
// science when any of its categories is listed as such; when no category list
// is supplied, when any domestic author belongs to a life-science SDS.
bool is_life_science(const PublicationRecord& pub, const Taxonomy& taxonomy);

struct PeerOutcome {
  std::string university_id;
  std::string uda_id;
  std::int64_t excellent = 0;
  std::int64_t good = 0;
  std::int64_t acceptable = 0;
  std::int64_t limited = 0;
  std::int64_t total = 0;
  bool operator==(const PeerOutcome&) const = default;
};

enum class Direction { higher_is_better, lower_is_better };

std::string to_string(Direction direction);
std::optional<Direction> parse_direction(const std::string& text);

struct IndicatorTable {
  std::string name;
  Direction direction = Direction::higher_is_better;
  std::map<std::string, double> values;  // university_id -> value
  bool operator==(const IndicatorTable&) const = default;
};

struct Corpus {
  Window window;
  std::vector<PublicationRecord> publications;  // sorted by pub_id
  std::vector<StaffEntry> staff;                // sorted by (university, sds, researcher)
  Taxonomy taxonomy;
  std::vector<PeerOutcome> peer_outcomes;        // sorted by (university, uda)
  std::map<std::string, IndicatorTable> indicators;
  std::size_t rejected_outside_window = 0;
  std::size_t rejected_no_domestic = 0;
  bool operator==(const Corpus&) const = default;
};

// Input file locations. The first five are required.
struct CorpusPaths {
  std::filesystem::path publications;
  std::filesystem::path pub_categories;
  std::filesystem::path pub_authors;
  std::filesystem::path staff;
  std::filesystem::path taxonomy;
  std::optional<std::filesystem::path> macro_map;
  std::optional<std::filesystem::path> life_science_categories;
  std::optional<std::filesystem::path> peer_outcomes;
  std::optional<std::filesystem::path> indicators;

  // Standard file names inside `dir`; optional files are used when present.
  static CorpusPaths in_directory(const std::filesystem::path& dir);
};

// Reads, filters to `window`, and cross-validates. Throws ValidationError
// naming the file and line of the first violation.
Corpus load_corpus(const CorpusPaths& paths, const Window& window);

// Canonicalizes ordering, drops publications outside the window or without a
// domestic author (counting them), and checks every cross-file invariant.
// Used by the loader and by programmatic corpus construction.
Corpus validate_corpus(Corpus corpus);

// Emits every file of the corpus under `dir` using the standard names.
// Reloading the output with the same window yields an equal corpus.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// Individual table readers, exposed for the CLI and tests.
// With `require_consistent_totals`, a row whose T differs from E + G + A + L
// or whose T is zero is a ValidationError naming its line.
std::vector<PeerOutcome> read_peer_outcomes(const std::filesystem::path& path,
                                            bool require_consistent_totals = false);
std::map<std::string, IndicatorTable> read_indicators(const std::filesystem::path& path);

struct OutcomeCheck {
  PeerOutcome outcome;
  bool pass = false;
};

// Flags rows where E + G + A + L differs from T.
std::vector<OutcomeCheck> validate_peer_outcomes(const std::vector<PeerOutcome>& outcomes);

}  // namespace rankeval
