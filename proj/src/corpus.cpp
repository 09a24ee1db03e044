#include "rankeval/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <tuple>

#include "rankeval/csv.hpp"
#include "rankeval/error.hpp"

namespace rankeval {

namespace {

constexpr double kWeightTolerance = 1e-9;

std::string short_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
  return std::string(buf, ptr);
}

bool author_order(const AuthorSlot& a, const AuthorSlot& b) {
  // Known positions first, ascending; unknown positions keep their input order.
  if (a.position.has_value() != b.position.has_value()) return a.position.has_value();
  if (!a.position) return false;
  return *a.position < *b.position;
}

// Checks one publication in isolation; `where` prefixes the message.
void check_publication(const PublicationRecord& pub, const Taxonomy& taxonomy,
                       const std::set<std::pair<std::string, std::string>>& staff_pairs,
                       const std::set<std::string>& roster_universities) {
  const std::string where = "publication " + pub.pub_id + ": ";
  if (pub.citations < 0) throw ValidationError(where + "negative citations");
  if (pub.total_author_count < 1) throw ValidationError(where + "total_author_count must be >= 1");
  if (pub.categories.empty()) throw ValidationError(where + "no subject category");
  double sum = 0.0;
  for (std::size_t i = 0; i < pub.categories.size(); ++i) {
    const auto& c = pub.categories[i];
    if (c.category_id.empty()) throw ValidationError(where + "empty category_id");
    if (!(c.weight >= 0.0) || c.weight > 1.0 + kWeightTolerance) {
      throw ValidationError(where + "category weight out of range for " + c.category_id);
    }
    if (i > 0 && pub.categories[i - 1].category_id == c.category_id) {
      throw ValidationError(where + "duplicate category " + c.category_id);
    }
    sum += c.weight;
  }
  if (std::fabs(sum - 1.0) > kWeightTolerance) {
    throw ValidationError(where + "weights sum " + short_real(sum));
  }
  if (static_cast<std::int64_t>(pub.authors.size()) > pub.total_author_count) {
    throw ValidationError(where + "more author slots than total_author_count");
  }
  const bool life_science = is_life_science(pub, taxonomy);
  std::set<int> seen;
  for (const auto& slot : pub.authors) {
    if (slot.position) {
      if (*slot.position < 1 || *slot.position > pub.total_author_count) {
        throw ValidationError(where + "author position " + std::to_string(*slot.position) +
                              " outside 1.." + std::to_string(pub.total_author_count));
      }
      if (!seen.insert(*slot.position).second) {
        throw ValidationError(where + "duplicate author position " +
                              std::to_string(*slot.position));
      }
    } else if (life_science) {
      throw ValidationError(where + "life-science publication with unknown author position");
    }
    if (slot.is_domestic_academic) {
      if (!slot.university_id || !slot.sds_id) {
        throw ValidationError(where + "domestic author without university_id/sds_id");
      }
      if (taxonomy.uda_of(*slot.sds_id) == nullptr) {
        throw ValidationError(where + "author sds " + *slot.sds_id + " has no UDA");
      }
      if (!roster_universities.contains(*slot.university_id)) {
        throw ValidationError(where + "author university " + *slot.university_id +
                              " absent from staff roster");
      }
      if (!staff_pairs.contains({*slot.university_id, *slot.sds_id})) {
        throw ValidationError(where + "no staff in (" + *slot.university_id + ", " +
                              *slot.sds_id + ")");
      }
    }
  }
}

std::string bool_text(bool b) { return b ? "1" : "0"; }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Window Window::parse(const std::string& text) {
  Window w;
  auto parse_year = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ValidationError("invalid window '" + text + "'");
    }
    return v;
  };
  auto dash = text.find('-');
  if (dash == std::string::npos) {
    w.first_year = w.last_year = parse_year(text);
  } else {
    w.first_year = parse_year(std::string_view(text).substr(0, dash));
    w.last_year = parse_year(std::string_view(text).substr(dash + 1));
  }
  if (w.last_year < w.first_year) throw ValidationError("invalid window '" + text + "'");
  return w;
}

std::string Window::to_string() const {
  return std::to_string(first_year) + "-" + std::to_string(last_year);
}

std::string to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::proceedings: return "proceedings";
  }
  return "article";
}

std::optional<DocType> parse_doc_type(const std::string& text) {
  if (text == "article") return DocType::article;
  if (text == "review") return DocType::review;
  if (text == "proceedings") return DocType::proceedings;
  return std::nullopt;
}

std::string to_string(Direction direction) {
  return direction == Direction::higher_is_better ? "higher_is_better" : "lower_is_better";
}

std::optional<Direction> parse_direction(const std::string& text) {
  if (text == "higher_is_better") return Direction::higher_is_better;
  if (text == "lower_is_better") return Direction::lower_is_better;
  return std::nullopt;
}

const std::string* Taxonomy::uda_of(const std::string& sds) const {
  auto it = sds_to_uda.find(sds);
  return it == sds_to_uda.end() ? nullptr : &it->second;
}

const std::string* Taxonomy::macro_of(const std::string& uda) const {
  auto it = uda_to_macro.find(uda);
  return it == uda_to_macro.end() ? nullptr : &it->second;
}

bool is_life_science(const PublicationRecord& pub, const Taxonomy& taxonomy) {
  if (!taxonomy.life_science_categories.empty()) {
    return std::any_of(pub.categories.begin(), pub.categories.end(), [&](const auto& c) {
      return taxonomy.life_science_categories.contains(c.category_id);
    });
  }
  return std::any_of(pub.authors.begin(), pub.authors.end(), [&](const AuthorSlot& a) {
    return a.is_domestic_academic && a.sds_id && taxonomy.life_science_sds.contains(*a.sds_id);
  });
}

CorpusPaths CorpusPaths::in_directory(const std::filesystem::path& dir) {
  CorpusPaths p;
  p.publications = dir / "publications.csv";
  p.pub_categories = dir / "pub_categories.csv";
  p.pub_authors = dir / "pub_authors.csv";
  p.staff = dir / "staff.csv";
  p.taxonomy = dir / "taxonomy.csv";
  auto optional = [&](const char* name) -> std::optional<std::filesystem::path> {
    auto path = dir / name;
    if (std::filesystem::exists(path)) return path;
    return std::nullopt;
  };
  p.macro_map = optional("macro_map.csv");
  p.life_science_categories = optional("life_science_categories.csv");
  p.peer_outcomes = optional("peer_outcomes.csv");
  p.indicators = optional("indicators.csv");
  return p;
}

// ---------------------------------------------------------------------------

std::vector<PeerOutcome> read_peer_outcomes(const std::filesystem::path& path,
                                            bool require_consistent_totals) {
  auto table = csv::Table::read(path, {"university_id", "uda_id", "E", "G", "A", "L"});
  std::vector<PeerOutcome> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : table.rows()) {
    PeerOutcome o;
    o.university_id = row.text("university_id");
    o.uda_id = row.text("uda_id");
    if (o.university_id.empty() || o.uda_id.empty()) row.fail("empty university_id or uda_id");
    o.excellent = row.integer("E");
    o.good = row.integer("G");
    o.acceptable = row.integer("A");
    o.limited = row.integer("L");
    if (o.excellent < 0 || o.good < 0 || o.acceptable < 0 || o.limited < 0) {
      row.fail("negative outcome count");
    }
    auto t = row.optional_integer("T");
    o.total = t ? *t : o.excellent + o.good + o.acceptable + o.limited;
    if (o.total < 0) row.fail("negative T");
    if (require_consistent_totals) {
      if (o.total == 0) row.fail("no submitted outputs");
      if (o.excellent + o.good + o.acceptable + o.limited != o.total) {
        row.fail("E + G + A + L does not equal T");
      }
    }
    if (!seen.insert({o.university_id, o.uda_id}).second) {
      row.fail("duplicate (university_id, uda_id)");
    }
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.university_id, a.uda_id) < std::tie(b.university_id, b.uda_id);
  });
  return out;
}

std::map<std::string, IndicatorTable> read_indicators(const std::filesystem::path& path) {
  auto table =
      csv::Table::read(path, {"indicator_name", "direction", "university_id", "value"});
  std::map<std::string, IndicatorTable> out;
  for (const auto& row : table.rows()) {
    const auto& name = row.text("indicator_name");
    if (name.empty()) row.fail("empty indicator_name");
    auto direction = parse_direction(row.text("direction"));
    if (!direction) row.fail("unknown direction '" + row.text("direction") + "'");
    const auto& uni = row.text("university_id");
    if (uni.empty()) row.fail("empty university_id");
    const double value = row.real("value");
    if (!std::isfinite(value)) row.fail("non-finite indicator value");
    auto [it, inserted] = out.try_emplace(name);
    auto& ind = it->second;
    if (inserted) {
      ind.name = name;
      ind.direction = *direction;
    } else if (ind.direction != *direction) {
      row.fail("inconsistent direction for indicator " + name);
    }
    if (!ind.values.emplace(uni, value).second) {
      row.fail("duplicate university " + uni + " for indicator " + name);
    }
  }
  return out;
}

std::vector<OutcomeCheck> validate_peer_outcomes(const std::vector<PeerOutcome>& outcomes) {
  std::vector<OutcomeCheck> report;
  report.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    const bool pass = o.excellent >= 0 && o.good >= 0 && o.acceptable >= 0 && o.limited >= 0 &&
                      o.excellent + o.good + o.acceptable + o.limited == o.total;
    report.push_back({o, pass});
  }
  return report;
}

// ---------------------------------------------------------------------------

Corpus validate_corpus(Corpus corpus) {
  const int window_length = corpus.window.length();
  if (window_length <= 0) throw ValidationError("empty window");
  const auto& taxonomy = corpus.taxonomy;
  for (const auto& [sds, uda] : taxonomy.sds_to_uda) {
    if (sds.empty() || uda.empty()) throw ValidationError("taxonomy: empty sds_id or uda_id");
  }
  for (const auto& sds : taxonomy.life_science_sds) {
    if (!taxonomy.sds_to_uda.contains(sds)) {
      throw ValidationError("taxonomy: life-science sds " + sds + " has no UDA");
    }
  }

  std::sort(corpus.staff.begin(), corpus.staff.end(), [](const auto& a, const auto& b) {
    return std::tie(a.university_id, a.sds_id, a.researcher_id) <
           std::tie(b.university_id, b.sds_id, b.researcher_id);
  });
  std::set<std::pair<std::string, std::string>> staff_pairs;
  std::set<std::string> roster_universities;
  for (std::size_t i = 0; i < corpus.staff.size(); ++i) {
    const auto& s = corpus.staff[i];
    const std::string where = "staff " + s.researcher_id + ": ";
    if (s.researcher_id.empty() || s.university_id.empty() || s.sds_id.empty()) {
      throw ValidationError(where + "empty identifier");
    }
    if (!(s.years_on_staff > 0.0) || s.years_on_staff > window_length) {
      throw ValidationError(where + "years_on_staff " + short_real(s.years_on_staff) +
                            " outside (0, " + std::to_string(window_length) + "]");
    }
    if (taxonomy.uda_of(s.sds_id) == nullptr) {
      throw ValidationError(where + "sds " + s.sds_id + " has no UDA");
    }
    if (i > 0) {
      const auto& p = corpus.staff[i - 1];
      if (p.researcher_id == s.researcher_id && p.university_id == s.university_id &&
          p.sds_id == s.sds_id) {
        throw ValidationError(where + "duplicate staff entry");
      }
    }
    staff_pairs.emplace(s.university_id, s.sds_id);
    roster_universities.insert(s.university_id);
  }

  std::vector<PublicationRecord> kept;
  kept.reserve(corpus.publications.size());
  for (auto& pub : corpus.publications) {
    if (!corpus.window.contains(pub.year)) {
      ++corpus.rejected_outside_window;
      continue;
    }
    std::sort(pub.categories.begin(), pub.categories.end(),
              [](const auto& a, const auto& b) { return a.category_id < b.category_id; });
    std::stable_sort(pub.authors.begin(), pub.authors.end(), author_order);
    if (pub.pub_id.empty()) throw ValidationError("publication with empty pub_id");
    check_publication(pub, taxonomy, staff_pairs, roster_universities);
    const bool has_domestic = std::any_of(pub.authors.begin(), pub.authors.end(),
                                          [](const auto& a) { return a.is_domestic_academic; });
    if (!has_domestic) {
      ++corpus.rejected_no_domestic;
      continue;
    }
    kept.push_back(std::move(pub));
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.pub_id < b.pub_id; });
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i - 1].pub_id == kept[i].pub_id) {
      throw ValidationError("duplicate pub_id " + kept[i].pub_id);
    }
  }
  corpus.publications = std::move(kept);

  std::sort(corpus.peer_outcomes.begin(), corpus.peer_outcomes.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.university_id, a.uda_id) < std::tie(b.university_id, b.uda_id);
            });
  for (std::size_t i = 1; i < corpus.peer_outcomes.size(); ++i) {
    const auto& a = corpus.peer_outcomes[i - 1];
    const auto& b = corpus.peer_outcomes[i];
    if (a.university_id == b.university_id && a.uda_id == b.uda_id) {
      throw ValidationError("duplicate peer outcome (" + a.university_id + ", " + a.uda_id + ")");
    }
  }
  for (const auto& [name, ind] : corpus.indicators) {
    if (name != ind.name) throw ValidationError("indicator key mismatch for " + name);
  }
  return corpus;
}

Corpus load_corpus(const CorpusPaths& paths, const Window& window) {
  Corpus corpus;
  corpus.window = window;
  if (window.length() <= 0) throw ValidationError("empty window");

  // Taxonomy and roster first: author rows are checked against them.
  {
    auto table = csv::Table::read(paths.taxonomy, {"sds_id", "uda_id", "is_life_science"});
    for (const auto& row : table.rows()) {
      const auto& sds = row.text("sds_id");
      const auto& uda = row.text("uda_id");
      if (sds.empty() || uda.empty()) row.fail("empty sds_id or uda_id");
      if (!corpus.taxonomy.sds_to_uda.emplace(sds, uda).second) row.fail("duplicate sds " + sds);
      if (row.boolean("is_life_science")) corpus.taxonomy.life_science_sds.insert(sds);
    }
  }
  if (paths.macro_map) {
    auto table = csv::Table::read(*paths.macro_map, {"uda_id", "macro_id"});
    for (const auto& row : table.rows()) {
      const auto& uda = row.text("uda_id");
      const auto& macro = row.text("macro_id");
      if (uda.empty() || macro.empty()) row.fail("empty uda_id or macro_id");
      if (!corpus.taxonomy.uda_to_macro.emplace(uda, macro).second) {
        row.fail("duplicate uda " + uda);
      }
    }
  }
  if (paths.life_science_categories) {
    auto table = csv::Table::read(*paths.life_science_categories, {"category_id"});
    for (const auto& row : table.rows()) {
      if (row.text("category_id").empty()) row.fail("empty category_id");
      corpus.taxonomy.life_science_categories.insert(row.text("category_id"));
    }
  }

  std::set<std::pair<std::string, std::string>> staff_pairs;
  std::set<std::string> roster_universities;
  {
    auto table =
        csv::Table::read(paths.staff, {"researcher_id", "university_id", "sds_id", "years_on_staff"});
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const auto& row : table.rows()) {
      StaffEntry s;
      s.researcher_id = row.text("researcher_id");
      s.university_id = row.text("university_id");
      s.sds_id = row.text("sds_id");
      s.years_on_staff = row.real("years_on_staff");
      if (s.researcher_id.empty() || s.university_id.empty() || s.sds_id.empty()) {
        row.fail("empty identifier");
      }
      if (!(s.years_on_staff > 0.0) || s.years_on_staff > window.length()) {
        row.fail("years_on_staff " + short_real(s.years_on_staff) + " outside (0, " +
                 std::to_string(window.length()) + "]");
      }
      if (corpus.taxonomy.uda_of(s.sds_id) == nullptr) row.fail("sds " + s.sds_id + " has no UDA");
      if (!seen.emplace(s.researcher_id, s.university_id, s.sds_id).second) {
        row.fail("duplicate staff entry");
      }
      staff_pairs.emplace(s.university_id, s.sds_id);
      roster_universities.insert(s.university_id);
      corpus.staff.push_back(std::move(s));
    }
  }

  // Publications; rows outside the window are counted and their dependents skipped.
  std::map<std::string, PublicationRecord> pubs;
  std::set<std::string> out_of_window;
  {
    auto table = csv::Table::read(
        paths.publications, {"pub_id", "year", "doc_type", "citations", "total_author_count"});
    for (const auto& row : table.rows()) {
      PublicationRecord pub;
      pub.pub_id = row.text("pub_id");
      if (pub.pub_id.empty()) row.fail("empty pub_id");
      pub.year = static_cast<int>(row.integer("year"));
      auto type = parse_doc_type(row.text("doc_type"));
      if (!type) row.fail("unknown doc_type '" + row.text("doc_type") + "'");
      pub.doc_type = *type;
      pub.citations = row.integer("citations");
      if (pub.citations < 0) row.fail("negative citations");
      pub.total_author_count = static_cast<int>(row.integer("total_author_count"));
      if (pub.total_author_count < 1) row.fail("total_author_count must be >= 1");
      if (pubs.contains(pub.pub_id) || out_of_window.contains(pub.pub_id)) {
        row.fail("duplicate pub_id " + pub.pub_id);
      }
      if (!window.contains(pub.year)) {
        out_of_window.insert(pub.pub_id);
        continue;
      }
      pubs.emplace(pub.pub_id, std::move(pub));
    }
  }
  corpus.rejected_outside_window = out_of_window.size();

  auto lookup = [&](const csv::Row& row) -> PublicationRecord* {
    const auto& id = row.text("pub_id");
    if (out_of_window.contains(id)) return nullptr;
    auto it = pubs.find(id);
    if (it == pubs.end()) row.fail("unknown pub_id " + id);
    return &it->second;
  };

  {
    auto table = csv::Table::read(paths.pub_categories, {"pub_id", "category_id", "weight"});
    // pub_id -> (all weights missing?, any weight missing?, last line)
    std::map<std::string, std::tuple<bool, bool, std::size_t>> state;
    for (const auto& row : table.rows()) {
      auto* pub = lookup(row);
      if (pub == nullptr) continue;
      CategoryWeight c;
      c.category_id = row.text("category_id");
      if (c.category_id.empty()) row.fail("empty category_id");
      auto w = row.optional_real("weight");
      if (w && (!(*w >= 0.0) || *w > 1.0 + kWeightTolerance)) row.fail("weight out of range");
      for (const auto& existing : pub->categories) {
        if (existing.category_id == c.category_id) row.fail("duplicate category " + c.category_id);
      }
      c.weight = w.value_or(0.0);
      auto [it, fresh] = state.try_emplace(pub->pub_id, true, false, row.line());
      auto& [all_missing, any_missing, line] = it->second;
      all_missing = all_missing && !w;
      any_missing = any_missing || !w;
      line = row.line();
      if (any_missing && !all_missing) {
        row.fail("publication " + pub->pub_id + ": weights given for some categories only");
      }
      pub->categories.push_back(std::move(c));
    }
    for (auto& [id, st] : state) {
      auto& pub = pubs.at(id);
      const auto& [all_missing, any_missing, line] = st;
      if (all_missing) {
        for (auto& c : pub.categories) c.weight = 1.0 / static_cast<double>(pub.categories.size());
        continue;
      }
      double sum = 0.0;
      for (const auto& c : pub.categories) sum += c.weight;
      if (std::fabs(sum - 1.0) > kWeightTolerance) {
        throw ValidationError(paths.pub_categories.string(), line,
                              "publication " + id + ": weights sum " + short_real(sum));
      }
    }
  }

  {
    auto table = csv::Table::read(paths.pub_authors, {"pub_id", "position", "is_domestic_academic",
                                                      "university_id", "sds_id"});
    for (const auto& row : table.rows()) {
      auto* pub = lookup(row);
      if (pub == nullptr) continue;
      AuthorSlot slot;
      if (auto pos = row.optional_integer("position")) {
        if (*pos < 1 || *pos > pub->total_author_count) {
          row.fail("author position " + std::to_string(*pos) + " outside 1.." +
                   std::to_string(pub->total_author_count));
        }
        slot.position = static_cast<int>(*pos);
      }
      slot.is_domestic_academic = row.boolean("is_domestic_academic");
      slot.university_id = row.optional_text("university_id");
      slot.sds_id = row.optional_text("sds_id");
      slot.researcher_id = row.optional_text("researcher_id");
      if (slot.is_domestic_academic) {
        if (!slot.university_id || !slot.sds_id) {
          row.fail("domestic author without university_id/sds_id");
        }
        if (corpus.taxonomy.uda_of(*slot.sds_id) == nullptr) {
          row.fail("sds " + *slot.sds_id + " has no UDA");
        }
        if (!roster_universities.contains(*slot.university_id)) {
          row.fail("university " + *slot.university_id + " absent from staff roster");
        }
        if (!staff_pairs.contains({*slot.university_id, *slot.sds_id})) {
          row.fail("no staff in (" + *slot.university_id + ", " + *slot.sds_id + ")");
        }
      }
      for (const auto& existing : pub->authors) {
        if (slot.position && existing.position == slot.position) {
          row.fail("duplicate author position " + std::to_string(*slot.position));
        }
      }
      pub->authors.push_back(std::move(slot));
      if (static_cast<std::int64_t>(pub->authors.size()) > pub->total_author_count) {
        row.fail("publication " + pub->pub_id + ": more author slots than total_author_count");
      }
    }
  }

  corpus.publications.reserve(pubs.size());
  for (auto& [id, pub] : pubs) corpus.publications.push_back(std::move(pub));

  if (paths.peer_outcomes) corpus.peer_outcomes = read_peer_outcomes(*paths.peer_outcomes);
  if (paths.indicators) corpus.indicators = read_indicators(*paths.indicators);

  // Window rejections were already counted; validate_corpus counts none again.
  const std::size_t outside = corpus.rejected_outside_window;
  corpus.rejected_outside_window = 0;
  corpus = validate_corpus(std::move(corpus));
  corpus.rejected_outside_window = outside;
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_out(dir / "publications.csv");
    csv::write_row(out, {"pub_id", "year", "doc_type", "citations", "total_author_count"});
    for (const auto& p : corpus.publications) {
      csv::write_row(out, {p.pub_id, std::to_string(p.year), to_string(p.doc_type),
                           std::to_string(p.citations), std::to_string(p.total_author_count)});
    }
  }
  {
    auto out = open_out(dir / "pub_categories.csv");
    csv::write_row(out, {"pub_id", "category_id", "weight"});
    for (const auto& p : corpus.publications) {
      for (const auto& c : p.categories) {
        csv::write_row(out, {p.pub_id, c.category_id, csv::format_real(c.weight)});
      }
    }
  }
  {
    auto out = open_out(dir / "pub_authors.csv");
    csv::write_row(out, {"pub_id", "position", "is_domestic_academic", "university_id", "sds_id",
                         "researcher_id"});
    for (const auto& p : corpus.publications) {
      for (const auto& a : p.authors) {
        csv::write_row(out, {p.pub_id, a.position ? std::to_string(*a.position) : "",
                             bool_text(a.is_domestic_academic), a.university_id.value_or(""),
                             a.sds_id.value_or(""), a.researcher_id.value_or("")});
      }
    }
  }
  {
    auto out = open_out(dir / "staff.csv");
    csv::write_row(out, {"researcher_id", "university_id", "sds_id", "years_on_staff"});
    for (const auto& s : corpus.staff) {
      csv::write_row(out, {s.researcher_id, s.university_id, s.sds_id,
                           csv::format_real(s.years_on_staff)});
    }
  }
  {
    auto out = open_out(dir / "taxonomy.csv");
    csv::write_row(out, {"sds_id", "uda_id", "is_life_science"});
    for (const auto& [sds, uda] : corpus.taxonomy.sds_to_uda) {
      csv::write_row(out, {sds, uda, bool_text(corpus.taxonomy.life_science_sds.contains(sds))});
    }
  }
  {
    auto out = open_out(dir / "macro_map.csv");
    csv::write_row(out, {"uda_id", "macro_id"});
    for (const auto& [uda, macro] : corpus.taxonomy.uda_to_macro) csv::write_row(out, {uda, macro});
  }
  if (!corpus.taxonomy.life_science_categories.empty()) {
    auto out = open_out(dir / "life_science_categories.csv");
    csv::write_row(out, {"category_id"});
    for (const auto& c : corpus.taxonomy.life_science_categories) csv::write_row(out, {c});
  }
  {
    auto out = open_out(dir / "peer_outcomes.csv");
    csv::write_row(out, {"university_id", "uda_id", "E", "G", "A", "L", "T"});
    for (const auto& o : corpus.peer_outcomes) {
      csv::write_row(out, {o.university_id, o.uda_id, std::to_string(o.excellent),
                           std::to_string(o.good), std::to_string(o.acceptable),
                           std::to_string(o.limited), std::to_string(o.total)});
    }
  }
  {
    auto out = open_out(dir / "indicators.csv");
    csv::write_row(out, {"indicator_name", "direction", "university_id", "value"});
    for (const auto& [name, ind] : corpus.indicators) {
      for (const auto& [uni, value] : ind.values) {
        csv::write_row(out, {name, to_string(ind.direction), uni, csv::format_real(value)});
      }
    }
  }
}

}  // namespace rankeval
