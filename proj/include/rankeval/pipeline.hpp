#pragma once

#include <vector>

#include "rankeval/corpus.hpp"
#include "rankeval/execution.hpp"
#include "rankeval/productivity.hpp"
#include "rankeval/rankcmp.hpp"
#include "rankeval/scoring.hpp"

namespace rankeval {

struct ScoreRun {
  BaselineTable baselines;
  std::vector<CreditShare> shares;
  EligibilityReport eligibility;
  ScoreTable sds;
  ScoreTable uda;
  ScoreTable university;
  ScoreTable macro;
  std::size_t raw_fallback_publications = 0;
};

// Baselines -> shares -> eligibility -> SDS scores -> UDA, university and macro scores.
ScoreRun run_scoring(const Corpus& corpus, Execution execution = Execution::parallel);

// Scores of one unit of a table as a ranking over universities (higher is better).
RankingList ranking_from_scores(const ScoreTable& table, const std::string& unit_id,
                                std::string label);

}  // namespace rankeval
