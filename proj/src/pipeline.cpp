#include "rankeval/pipeline.hpp"

#include <set>

namespace rankeval {

ScoreRun run_scoring(const Corpus& corpus, Execution execution) {
  ScoreRun run;
  run.baselines = compute_baselines(corpus);
  run.shares = credit_shares(corpus, run.baselines, execution);
  run.eligibility = filter_eligible_sds(corpus, run.shares);
  run.sds = sds_productivity(run.shares, corpus.staff, corpus.window, run.eligibility, execution);
  run.uda = uda_productivity(run.sds, corpus.taxonomy);
  run.university = university_productivity(run.sds, corpus.taxonomy);
  run.macro = macro_uda_productivity(run.sds, corpus.taxonomy);
  std::set<std::string> fallback;
  for (const auto& s : run.shares) {
    if (s.raw_fallback) fallback.insert(s.pub_id);
  }
  run.raw_fallback_publications = fallback.size();
  return run;
}

RankingList ranking_from_scores(const ScoreTable& table, const std::string& unit_id,
                                std::string label) {
  std::map<std::string, double> scores;
  for (const auto& [key, entry] : table.entries) {
    if (key.second == unit_id) scores.emplace(key.first, entry.productivity);
  }
  return build_ranking(std::move(label), scores, Direction::higher_is_better, to_string(table.level));
}

}  // namespace rankeval
