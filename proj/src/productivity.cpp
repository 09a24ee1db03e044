#include "rankeval/productivity.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <tuple>

#include "rankeval/csv.hpp"
#include "rankeval/error.hpp"

namespace rankeval {

std::string to_string(ScoreLevel level) {
  switch (level) {
    case ScoreLevel::sds: return "sds";
    case ScoreLevel::uda: return "uda";
    case ScoreLevel::macro: return "macro";
    case ScoreLevel::university: return "university";
  }
  return "sds";
}

namespace {

std::optional<ScoreLevel> parse_level(const std::string& text) {
  if (text == "sds") return ScoreLevel::sds;
  if (text == "uda") return ScoreLevel::uda;
  if (text == "macro") return ScoreLevel::macro;
  if (text == "university") return ScoreLevel::university;
  return std::nullopt;
}

std::map<GroupKey, double> staff_equivalents(const std::vector<StaffEntry>& roster,
                                             const Window& window) {
  std::vector<const StaffEntry*> sorted;
  sorted.reserve(roster.size());
  for (const auto& s : roster) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](const StaffEntry* a, const StaffEntry* b) {
    return std::tie(a->university_id, a->sds_id, a->researcher_id) <
           std::tie(b->university_id, b->sds_id, b->researcher_id);
  });
  const double w = static_cast<double>(window.length());
  std::map<GroupKey, double> rs;
  for (const auto* s : sorted) rs[{s->university_id, s->sds_id}] += s->years_on_staff / w;
  return rs;
}

using UnitResolver = std::function<const std::string*(const std::string& sds)>;

// Staff-weighted mean of normalized SDS productivity per (university, unit).
ScoreTable aggregate(const ScoreTable& sds_table, ScoreLevel level, const UnitResolver& unit_of,
                     std::vector<std::string> warnings) {
  if (sds_table.level != ScoreLevel::sds) {
    throw ComputationError("aggregation needs an sds-level score table");
  }
  ScoreTable out;
  out.level = level;
  out.warnings = std::move(warnings);
  std::set<std::string> dropped;
  std::map<GroupKey, std::pair<double, double>> sums;  // (weighted sum, RS)
  for (const auto& [key, entry] : sds_table.entries) {
    const auto& [uni, sds] = key;
    auto mean_it = sds_table.national_means.find(sds);
    if (mean_it == sds_table.national_means.end()) {
      throw ComputationError("no national mean for sds " + sds);
    }
    if (!(mean_it->second > 0.0)) {
      dropped.insert(sds);
      continue;
    }
    const std::string* unit = unit_of(sds);
    if (unit == nullptr) continue;
    auto& [num, den] = sums[{uni, *unit}];
    num += entry.productivity / mean_it->second * entry.staff_equivalent;
    den += entry.staff_equivalent;
  }
  for (const auto& sds : dropped) {
    out.warnings.push_back("sds " + sds + " dropped: national mean productivity is zero");
  }
  for (const auto& [key, sum] : sums) {
    out.entries.emplace(key, ScoreEntry{sum.first / sum.second, sum.second});
  }
  return out;
}

}  // namespace

double staff_time_equivalent(const std::vector<StaffEntry>& roster,
                             const std::string& university_id, const std::string& sds_id,
                             const Window& window) {
  const double w = static_cast<double>(window.length());
  if (!(w > 0.0)) throw ComputationError("window length must be positive");
  double total = 0.0;
  for (const auto& s : roster) {
    if (s.university_id == university_id && s.sds_id == sds_id) total += s.years_on_staff / w;
  }
  return total;
}

EligibilityReport filter_eligible_sds(const Corpus& corpus, const std::vector<CreditShare>& shares) {
  // National staff per SDS and headcount per (university, sds).
  std::map<std::string, std::set<std::string>> national;
  std::map<GroupKey, std::set<std::string>> group_staff;
  for (const auto& s : corpus.staff) {
    national[s.sds_id].insert(s.researcher_id);
    group_staff[{s.university_id, s.sds_id}].insert(s.researcher_id);
  }

  std::set<std::tuple<std::string, std::string, std::string>> credited;  // (pub, uni, sds)
  for (const auto& s : shares) credited.emplace(s.pub_id, s.university_id, s.sds_id);

  std::map<GroupKey, std::set<std::string>> identified;
  std::map<GroupKey, std::size_t> anonymous;
  for (const auto& pub : corpus.publications) {
    for (const auto& slot : pub.authors) {
      if (!slot.is_domestic_academic) continue;
      GroupKey key{*slot.university_id, *slot.sds_id};
      if (!credited.contains({pub.pub_id, key.first, key.second})) continue;
      if (slot.researcher_id && group_staff[key].contains(*slot.researcher_id)) {
        identified[key].insert(*slot.researcher_id);
      } else {
        ++anonymous[key];
      }
    }
  }

  std::map<std::string, std::size_t> active;
  for (const auto& [key, members] : group_staff) {
    const std::size_t known = identified.contains(key) ? identified[key].size() : 0;
    const std::size_t anon = anonymous.contains(key) ? anonymous[key] : 0;
    active[key.second] += std::min(members.size(), known + anon);
  }

  EligibilityReport report;
  for (const auto& [sds, uda] : corpus.taxonomy.sds_to_uda) {
    SdsEligibility e;
    if (auto it = national.find(sds); it != national.end()) e.staff = it->second.size();
    e.active = std::min(e.staff, active[sds]);
    e.active_fraction =
        e.staff == 0 ? 0.0 : static_cast<double>(e.active) / static_cast<double>(e.staff);
    e.eligible = e.staff > 0 && e.active_fraction >= kEligibilityThreshold;
    report.emplace(sds, e);
  }
  return report;
}

ScoreTable sds_productivity(const std::vector<CreditShare>& shares,
                            const std::vector<StaffEntry>& roster, const Window& window,
                            const EligibilityReport& eligibility, Execution execution) {
  auto is_eligible = [&](const std::string& sds) {
    auto it = eligibility.find(sds);
    return it != eligibility.end() && it->second.eligible;
  };
  const auto rs = staff_equivalents(roster, window);

  // Group shares per key, preserving their (pub_id) order within each group.
  std::map<GroupKey, std::vector<const CreditShare*>> grouped;
  for (const auto& s : shares) {
    if (!is_eligible(s.sds_id)) continue;
    GroupKey key{s.university_id, s.sds_id};
    if (!rs.contains(key)) {
      throw ComputationError("credit for (" + s.university_id + ", " + s.sds_id +
                             ") without research staff (publication " + s.pub_id + ")");
    }
    grouped[key].push_back(&s);
  }

  std::vector<GroupKey> keys;
  std::vector<double> staff;
  for (const auto& [key, value] : rs) {
    if (!is_eligible(key.second)) continue;
    keys.push_back(key);
    staff.push_back(value);
  }
  std::vector<double> productivity(keys.size(), 0.0);

  const auto& by_key = grouped;
  auto score_one = [&](std::size_t i) {
    auto it = by_key.find(keys[i]);
    if (it == by_key.end()) return;
    double total = 0.0;
    for (const auto* s : it->second) total += s->standardized_value * s->fraction;
    productivity[i] = total / staff[i];
  };

  if (execution == Execution::serial) {
    for (std::size_t i = 0; i < keys.size(); ++i) score_one(i);
  } else {
    const auto n = static_cast<std::ptrdiff_t>(keys.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) score_one(static_cast<std::size_t>(i));
  }

  ScoreTable table;
  table.level = ScoreLevel::sds;
  std::map<std::string, std::pair<double, std::size_t>> means;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    table.entries.emplace(keys[i], ScoreEntry{productivity[i], staff[i]});
  }
  // Entries iterate in (university, sds) order, so each mean sums in university order.
  for (const auto& [key, entry] : table.entries) {
    auto& [sum, count] = means[key.second];
    sum += entry.productivity;
    ++count;
  }
  for (const auto& [sds, m] : means) {
    table.national_means.emplace(sds, m.first / static_cast<double>(m.second));
  }
  return table;
}

ScoreTable uda_productivity(const ScoreTable& sds_table, const Taxonomy& taxonomy) {
  return aggregate(
      sds_table, ScoreLevel::uda,
      [&](const std::string& sds) { return taxonomy.uda_of(sds); }, {});
}

ScoreTable university_productivity(const ScoreTable& sds_table, const Taxonomy& taxonomy) {
  (void)taxonomy;
  static const std::string whole = kWholeUniversityUnit;
  return aggregate(
      sds_table, ScoreLevel::university, [&](const std::string&) { return &whole; }, {});
}

ScoreTable macro_uda_productivity(const ScoreTable& sds_table, const Taxonomy& taxonomy) {
  std::set<std::string> unmapped;
  for (const auto& [key, entry] : sds_table.entries) {
    const std::string* uda = taxonomy.uda_of(key.second);
    if (uda != nullptr && taxonomy.macro_of(*uda) == nullptr) unmapped.insert(*uda);
  }
  std::vector<std::string> warnings;
  for (const auto& uda : unmapped) {
    warnings.push_back("uda " + uda + " excluded: no macro-UDA mapping");
  }
  return aggregate(
      sds_table, ScoreLevel::macro,
      [&](const std::string& sds) -> const std::string* {
        const std::string* uda = taxonomy.uda_of(sds);
        return uda == nullptr ? nullptr : taxonomy.macro_of(*uda);
      },
      std::move(warnings));
}

void write_score_table_csv(const ScoreTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  csv::write_row(out, {"level", "university_id", "unit_id", "P", "RS"});
  const auto level = to_string(table.level);
  for (const auto& [key, e] : table.entries) {
    csv::write_row(out, {level, key.first, key.second, csv::format_real(e.productivity),
                         csv::format_real(e.staff_equivalent)});
  }
}

ScoreTable read_score_table_csv(const std::filesystem::path& path) {
  auto csv_table = csv::Table::read(path, {"level", "university_id", "unit_id", "P", "RS"});
  ScoreTable table;
  bool first = true;
  for (const auto& row : csv_table.rows()) {
    auto level = parse_level(row.text("level"));
    if (!level) row.fail("unknown level '" + row.text("level") + "'");
    if (first) {
      table.level = *level;
      first = false;
    } else if (*level != table.level) {
      row.fail("mixed levels in one score table");
    }
    const double p = row.real("P");
    const double rs = row.real("RS");
    if (!(p >= 0.0) || !(rs > 0.0)) row.fail("P must be >= 0 and RS > 0");
    if (!table.entries.emplace(GroupKey{row.text("university_id"), row.text("unit_id")},
                               ScoreEntry{p, rs})
             .second) {
      row.fail("duplicate (university_id, unit_id)");
    }
  }
  return table;
}

void write_eligibility_csv(const EligibilityReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  csv::write_row(out, {"sds_id", "staff", "active", "active_fraction", "eligible"});
  for (const auto& [sds, e] : report) {
    csv::write_row(out, {sds, std::to_string(e.staff), std::to_string(e.active),
                         csv::format_real(e.active_fraction), e.eligible ? "1" : "0"});
  }
}

}  // namespace rankeval
