#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rankeval/corpus.hpp"
#include "rankeval/execution.hpp"
#include "rankeval/scoring.hpp"

namespace rankeval {

enum class ScoreLevel { sds, uda, macro, university };

std::string to_string(ScoreLevel level);

// unit_id used for university-level entries.
inline constexpr const char* kWholeUniversityUnit = "all";

struct ScoreEntry {
  double productivity = 0.0;   // P
  double staff_equivalent = 0.0;  // RS
  bool operator==(const ScoreEntry&) const = default;
};

struct ScoreTable {
  ScoreLevel level = ScoreLevel::sds;
  std::map<GroupKey, ScoreEntry> entries;        // (university_id, unit_id)
  std::map<std::string, double> national_means;  // sds_id -> mean P (sds level only)
  std::vector<std::string> warnings;
  bool operator==(const ScoreTable&) const = default;
};

// Sum of years_on_staff / W over matching roster entries.
double staff_time_equivalent(const std::vector<StaffEntry>& roster,
                             const std::string& university_id, const std::string& sds_id,
                             const Window& window);

struct SdsEligibility {
  std::size_t staff = 0;
  std::size_t active = 0;
  double active_fraction = 0.0;
  bool eligible = false;
  bool operator==(const SdsEligibility&) const = default;
};

using EligibilityReport = std::map<std::string, SdsEligibility>;

inline constexpr double kEligibilityThreshold = 0.5;

// An SDS is eligible when at least half of its national staff authored a
// credited publication. Authors are matched by researcher_id; slots without
// one each count as a distinct active member, capped at the group headcount.
// Every SDS in the taxonomy is reported.
EligibilityReport filter_eligible_sds(const Corpus& corpus, const std::vector<CreditShare>& shares);

// P_{i,s} = (1/RS_{i,s}) * sum_j standardized_j * fraction_{j,i,s} for every
// (university, sds) with staff in an eligible SDS, plus the unweighted mean
// over universities per SDS. Shares in ineligible SDSs are ignored; shares
// for a group without staff raise ComputationError.
ScoreTable sds_productivity(const std::vector<CreditShare>& shares,
                            const std::vector<StaffEntry>& roster, const Window& window,
                            const EligibilityReport& eligibility,
                            Execution execution = Execution::parallel);

// Staff-weighted mean of P_{i,s}/mean_s over the SDSs of each UDA. SDSs with a
// zero national mean are dropped with a warning.
ScoreTable uda_productivity(const ScoreTable& sds_table, const Taxonomy& taxonomy);

// As above, over every scored SDS of the university.
ScoreTable university_productivity(const ScoreTable& sds_table, const Taxonomy& taxonomy);

// As above, over the SDSs whose UDA maps to each macro unit. UDAs without a
// macro mapping are excluded with a warning.
ScoreTable macro_uda_productivity(const ScoreTable& sds_table, const Taxonomy& taxonomy);

// level,university_id,unit_id,P,RS
void write_score_table_csv(const ScoreTable& table, const std::filesystem::path& path);
// Reads a score table written by write_score_table_csv.
ScoreTable read_score_table_csv(const std::filesystem::path& path);

// sds_id,staff,active,active_fraction,eligible
void write_eligibility_csv(const EligibilityReport& report, const std::filesystem::path& path);

}  // namespace rankeval
