#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rankeval/corpus.hpp"
#include "rankeval/execution.hpp"

namespace rankeval {

struct RankedEntry {
  std::string entity_id;
  double score = 0.0;
  double rank = 0.0;  // 1..n, ties share the average rank
  bool operator==(const RankedEntry&) const = default;
};

// Entries are in display order: best score first, entity_id ascending among ties.
struct RankingList {
  std::string label;
  std::string level = "university";
  Direction direction = Direction::higher_is_better;
  std::vector<RankedEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool operator==(const RankingList&) const = default;
};

// Throws ComputationError on NaN scores or an empty score map.
RankingList build_ranking(std::string label, const std::map<std::string, double>& scores,
                          Direction direction, std::string level = "university");

// Average (fractional) ranks of `values`, rank 1 = best per `direction`.
std::vector<double> average_ranks(std::span<const double> values, Direction direction);

inline constexpr std::size_t kMinCommonEntities = 3;

struct AlignedPair {
  RankingList first;   // restricted to common entities and re-ranked
  RankingList second;
  std::vector<std::string> entities;  // common entities, ascending
  std::vector<double> first_ranks;    // parallel to `entities`
  std::vector<double> second_ranks;
  std::vector<std::string> dropped_first;   // only in the first list
  std::vector<std::string> dropped_second;  // only in the second list
};

// Throws ValidationError when fewer than kMinCommonEntities are shared.
AlignedPair align(const RankingList& first, const RankingList& second);

enum class PValueMethod { t_approximation, exact_permutation };

// Exact enumeration is limited to this many entities.
inline constexpr std::size_t kMaxExactPermutationSize = 10;

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
  bool defined = true;  // false when either rank vector has zero variance
  std::size_t n = 0;
};

// Pearson correlation of the two rank vectors.
double rank_correlation(std::span<const double> a, std::span<const double> b);

// Two-sided p-value from t = rho sqrt((n-2)/(1-rho^2)) with n-2 degrees of freedom.
double spearman_p_value(double rho, std::size_t n);

// Two-sided p-value from all n! rearrangements of `b` (n <= kMaxExactPermutationSize).
double spearman_exact_p_value(std::span<const double> a, std::span<const double> b);

SpearmanResult spearman(std::span<const double> ranks_a, std::span<const double> ranks_b,
                        PValueMethod method = PValueMethod::t_approximation);

enum class Strength { negligible, small, moderate, strong };

std::string to_string(Strength strength);

// Cohen's conventional cutoffs on |rho|: 0.1, 0.3, 0.5.
Strength strength_label(double rho);

using QuartileMap = std::map<std::string, int>;

// Classes 4 (best) to 1 by display position with floor boundaries n/4, n/2,
// 3n/4; class 1 takes the remainder. Requires n >= 4.
QuartileMap quartile_classify(const RankingList& ranking);

struct ShiftDistribution {
  std::size_t n = 0;
  std::array<std::size_t, 4> counts{};
  std::array<double, 4> relative{};    // fractions summing to 1
  std::array<double, 4> cumulative{};  // P(shift <= s)
};

ShiftDistribution shift_distribution(const QuartileMap& a, const QuartileMap& b);

struct TopKRow {
  double percentage = 0.0;
  std::size_t k = 0;
  std::size_t variations = 0;
  double variation_pct = 0.0;
  bool empty = false;  // k == 0
};

// floor(pct * n / 100).
std::size_t topk_size(double percentage, std::size_t n);

// Entities in the reference top k that are missing from the other top k.
std::vector<TopKRow> topk_overlap(const RankingList& reference, const RankingList& other,
                                  const std::vector<double>& percentages);

std::vector<double> default_percentages();  // 5, 10, ..., 50

inline constexpr double kSignificanceLevel = 0.05;

struct MatrixCell {
  double rho = 1.0;
  double p_value = 0.0;
  bool defined = true;
  bool significant = false;
  std::size_t n = 0;
};

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<MatrixCell> cells;  // row-major, labels.size()^2

  const MatrixCell& at(std::size_t row, std::size_t col) const {
    return cells[row * labels.size() + col];
  }
};

// Pairwise Spearman over each pair's common entities. Symmetric with a unit diagonal.
CorrelationMatrix correlation_matrix(const std::vector<RankingList>& rankings,
                                     Execution execution = Execution::parallel);

struct ComparisonReport {
  std::string reference_label;
  std::string other_label;
  SpearmanResult correlation;
  Strength strength = Strength::negligible;
  std::vector<std::string> dropped_reference;
  std::vector<std::string> dropped_other;
  ShiftDistribution shifts;
  std::vector<TopKRow> topk;
};

ComparisonReport compare_rankings(const RankingList& reference, const RankingList& other,
                                  const std::vector<double>& percentages);

// label,level,direction,entity_id,score,rank
void write_ranking_csv(const RankingList& ranking, const std::filesystem::path& path);
RankingList read_ranking_csv(const std::filesystem::path& path);

}  // namespace rankeval
