#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rankeval/corpus.hpp"
#include "rankeval/productivity.hpp"
#include "rankeval/rankcmp.hpp"
#include "rankeval/report.hpp"
#include "rankeval/synth.hpp"

namespace rankeval::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeFailure = 1;
inline constexpr int kInputInvalid = 2;

struct RunConfig {
  Window window{2001, 2003};
  std::filesystem::path input_dir;
  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 42;
  std::vector<double> percentages = default_percentages();
};

// Writes scores_{sds,uda,university,macro}.csv and eligibility.csv (plus
// shares.csv when asked). Returns the paths written.
std::vector<std::filesystem::path> cmd_score(const RunConfig& config, bool emit_shares,
                                             std::ostream& log);

// Writes vtr.csv (per UDA) and vtr_university.csv (counts pooled over UDAs).
std::vector<std::filesystem::path> cmd_vtr(const RunConfig& config,
                                           const std::filesystem::path& outcomes,
                                           std::ostream& log);

enum class RankSource { scores, indicator, vtr };

struct RankRequest {
  RankSource source = RankSource::scores;
  std::filesystem::path input;
  std::string unit = kWholeUniversityUnit;  // score unit_id or VTR uda_id
  std::string indicator;                   // empty: every indicator in the file
  std::string label;                       // empty: derived from the source
};

// Writes rank_<label>.csv per ranking built.
std::vector<std::filesystem::path> cmd_rank(const RunConfig& config, const RankRequest& request,
                                            std::ostream& log);

std::vector<std::filesystem::path> cmd_compare(const RunConfig& config,
                                               const std::vector<std::filesystem::path>& rankings,
                                               std::ostream& log);

std::vector<std::filesystem::path> cmd_synth(const RunConfig& config, SynthParams params,
                                             std::ostream& log);

// Scores the corpus, rates peer outcomes, ranks universities by P, VTR and
// every indicator, and compares them with P as the reference.
std::vector<std::filesystem::path> cmd_report(const RunConfig& config, std::ostream& log);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankeval::cli
