#include "rankeval/rankcmp.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>

#include "rankeval/csv.hpp"
#include "rankeval/error.hpp"

namespace rankeval {

namespace {

// True when `a` is strictly better than `b` under `direction`.
bool better(double a, double b, Direction direction) {
  return direction == Direction::higher_is_better ? a > b : a < b;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> values, Direction direction) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return better(values[i], values[j], direction);
  });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() && values[order[end]] == values[order[begin]]) ++end;
    // Positions begin+1 .. end share their mean.
    const double rank = (static_cast<double>(begin + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t i = begin; i < end; ++i) ranks[order[i]] = rank;
    begin = end;
  }
  return ranks;
}

RankingList build_ranking(std::string label, const std::map<std::string, double>& scores,
                          Direction direction, std::string level) {
  if (scores.empty()) throw ComputationError("ranking " + label + ": no entities");
  RankingList list;
  list.label = std::move(label);
  list.level = std::move(level);
  list.direction = direction;
  list.entries.reserve(scores.size());
  for (const auto& [id, score] : scores) {
    if (std::isnan(score)) throw ComputationError("ranking " + list.label + ": NaN score for " + id);
    list.entries.push_back({id, score, 0.0});
  }
  // Map iteration is entity_id ascending, so a stable sort keeps that tie-break.
  std::stable_sort(list.entries.begin(), list.entries.end(), [&](const auto& a, const auto& b) {
    return better(a.score, b.score, direction);
  });
  std::vector<double> values;
  values.reserve(list.entries.size());
  for (const auto& e : list.entries) values.push_back(e.score);
  const auto ranks = average_ranks(values, direction);
  for (std::size_t i = 0; i < ranks.size(); ++i) list.entries[i].rank = ranks[i];
  return list;
}

AlignedPair align(const RankingList& first, const RankingList& second) {
  std::map<std::string, double> a_scores;
  std::map<std::string, double> b_scores;
  for (const auto& e : first.entries) a_scores.emplace(e.entity_id, e.score);
  for (const auto& e : second.entries) b_scores.emplace(e.entity_id, e.score);

  AlignedPair out;
  std::map<std::string, double> common_a;
  std::map<std::string, double> common_b;
  for (const auto& [id, s] : a_scores) {
    if (auto it = b_scores.find(id); it != b_scores.end()) {
      common_a.emplace(id, s);
      common_b.emplace(id, it->second);
      out.entities.push_back(id);
    } else {
      out.dropped_first.push_back(id);
    }
  }
  for (const auto& [id, s] : b_scores) {
    if (!a_scores.contains(id)) out.dropped_second.push_back(id);
  }
  if (out.entities.size() < kMinCommonEntities) {
    throw ValidationError("rankings " + first.label + " and " + second.label +
                          ": too few common entities (" + std::to_string(out.entities.size()) +
                          " < " + std::to_string(kMinCommonEntities) + ")");
  }
  out.first = build_ranking(first.label, common_a, first.direction, first.level);
  out.second = build_ranking(second.label, common_b, second.direction, second.level);

  std::map<std::string, double> rank_a;
  std::map<std::string, double> rank_b;
  for (const auto& e : out.first.entries) rank_a.emplace(e.entity_id, e.rank);
  for (const auto& e : out.second.entries) rank_b.emplace(e.entity_id, e.rank);
  for (const auto& id : out.entities) {
    out.first_ranks.push_back(rank_a.at(id));
    out.second_ranks.push_back(rank_b.at(id));
  }
  return out;
}

double rank_correlation(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (n != b.size()) throw ComputationError("rank vectors differ in length");
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

double spearman_p_value(double rho, std::size_t n) {
  if (n < 3) throw ComputationError("spearman needs n >= 3");
  if (std::fabs(rho) >= 1.0) return 0.0;
  const double dof = static_cast<double>(n - 2);
  const double t = rho * std::sqrt(dof / ((1.0 - rho) * (1.0 + rho)));
  boost::math::students_t_distribution<double> dist(dof);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0, 1.0);
}

double spearman_exact_p_value(std::span<const double> a, std::span<const double> b) {
  if (a.size() > kMaxExactPermutationSize) {
    throw ComputationError("exact permutation p-value limited to n <= " +
                           std::to_string(kMaxExactPermutationSize));
  }
  const double observed = std::fabs(rank_correlation(a, b));
  if (std::isnan(observed)) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> perm(b.begin(), b.end());
  std::sort(perm.begin(), perm.end());
  std::size_t total = 0;
  std::size_t extreme = 0;
  do {
    ++total;
    if (std::fabs(rank_correlation(a, perm)) >= observed - 1e-12) ++extreme;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(extreme) / static_cast<double>(total);
}

SpearmanResult spearman(std::span<const double> ranks_a, std::span<const double> ranks_b,
                        PValueMethod method) {
  SpearmanResult r;
  r.n = ranks_a.size();
  if (r.n != ranks_b.size()) throw ComputationError("rank vectors differ in length");
  if (r.n < kMinCommonEntities) throw ComputationError("spearman needs n >= 3");
  r.rho = rank_correlation(ranks_a, ranks_b);
  if (std::isnan(r.rho)) {
    r.defined = false;
    r.p_value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  if (method == PValueMethod::exact_permutation && r.n <= kMaxExactPermutationSize) {
    r.p_value = spearman_exact_p_value(ranks_a, ranks_b);
  } else {
    r.p_value = spearman_p_value(r.rho, r.n);
  }
  return r;
}

std::string to_string(Strength strength) {
  switch (strength) {
    case Strength::negligible: return "negligible";
    case Strength::small: return "small";
    case Strength::moderate: return "moderate";
    case Strength::strong: return "strong";
  }
  return "negligible";
}

Strength strength_label(double rho) {
  const double a = std::fabs(rho);
  if (a < 0.1) return Strength::negligible;
  if (a < 0.3) return Strength::small;
  if (a < 0.5) return Strength::moderate;
  return Strength::strong;
}

QuartileMap quartile_classify(const RankingList& ranking) {
  const std::size_t n = ranking.size();
  if (n < 4) throw ComputationError("quartile classification needs n >= 4");
  const std::size_t q4_end = n / 4;
  const std::size_t q3_end = n / 2;
  const std::size_t q2_end = 3 * n / 4;
  QuartileMap classes;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pos = i + 1;
    const int q = pos <= q4_end ? 4 : pos <= q3_end ? 3 : pos <= q2_end ? 2 : 1;
    classes.emplace(ranking.entries[i].entity_id, q);
  }
  return classes;
}

ShiftDistribution shift_distribution(const QuartileMap& a, const QuartileMap& b) {
  if (a.size() != b.size()) throw ComputationError("quartile maps cover different entities");
  ShiftDistribution d;
  d.n = a.size();
  for (const auto& [id, qa] : a) {
    auto it = b.find(id);
    if (it == b.end()) throw ComputationError("entity " + id + " missing from second classification");
    const int shift = std::abs(qa - it->second);
    if (shift < 0 || shift > 3) throw ComputationError("quartile outside 1..4 for " + id);
    ++d.counts[static_cast<std::size_t>(shift)];
  }
  if (d.n == 0) return d;
  std::size_t running = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    running += d.counts[s];
    d.relative[s] = static_cast<double>(d.counts[s]) / static_cast<double>(d.n);
    d.cumulative[s] = static_cast<double>(running) / static_cast<double>(d.n);
  }
  return d;
}

std::size_t topk_size(double percentage, std::size_t n) {
  if (!(percentage > 0.0) || percentage > 100.0) {
    throw ValidationError("top-k percentage must lie in (0, 100], got " + csv::format_real(percentage));
  }
  // Small slack so that exact products such as 20% of 60 survive rounding.
  return static_cast<std::size_t>(std::floor(percentage * static_cast<double>(n) / 100.0 + 1e-9));
}

std::vector<TopKRow> topk_overlap(const RankingList& reference, const RankingList& other,
                                  const std::vector<double>& percentages) {
  const std::size_t n = reference.size();
  {
    std::set<std::string> a;
    std::set<std::string> b;
    for (const auto& e : reference.entries) a.insert(e.entity_id);
    for (const auto& e : other.entries) b.insert(e.entity_id);
    if (a != b) throw ComputationError("top-k comparison needs identical entity sets");
  }
  std::vector<TopKRow> rows;
  rows.reserve(percentages.size());
  for (double pct : percentages) {
    TopKRow row;
    row.percentage = pct;
    row.k = topk_size(pct, n);
    if (row.k == 0) {
      row.empty = true;
      rows.push_back(row);
      continue;
    }
    std::set<std::string> other_top;
    for (std::size_t i = 0; i < row.k; ++i) other_top.insert(other.entries[i].entity_id);
    for (std::size_t i = 0; i < row.k; ++i) {
      if (!other_top.contains(reference.entries[i].entity_id)) ++row.variations;
    }
    row.variation_pct = 100.0 * static_cast<double>(row.variations) / static_cast<double>(row.k);
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> default_percentages() {
  std::vector<double> p;
  for (int i = 5; i <= 50; i += 5) p.push_back(static_cast<double>(i));
  return p;
}

CorrelationMatrix correlation_matrix(const std::vector<RankingList>& rankings, Execution execution) {
  if (rankings.size() < 2) throw ValidationError("correlation matrix needs at least 2 rankings");
  const std::size_t m = rankings.size();
  CorrelationMatrix matrix;
  for (const auto& r : rankings) matrix.labels.push_back(r.label);
  matrix.cells.resize(m * m);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    matrix.cells[i * m + i] = MatrixCell{1.0, 0.0, true, true, rankings[i].size()};
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }

  std::vector<std::exception_ptr> errors(pairs.size());
  auto fill = [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    try {
      const auto aligned = align(rankings[i], rankings[j]);
      const auto s = spearman(aligned.first_ranks, aligned.second_ranks);
      MatrixCell cell{s.rho, s.p_value, s.defined, s.defined && s.p_value < kSignificanceLevel, s.n};
      matrix.cells[i * m + j] = cell;
      matrix.cells[j * m + i] = cell;
    } catch (...) {
      errors[p] = std::current_exception();
    }
  };
  if (execution == Execution::serial) {
    for (std::size_t p = 0; p < pairs.size(); ++p) fill(p);
  } else {
    const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < n; ++p) fill(static_cast<std::size_t>(p));
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return matrix;
}

ComparisonReport compare_rankings(const RankingList& reference, const RankingList& other,
                                  const std::vector<double>& percentages) {
  const auto aligned = align(reference, other);
  ComparisonReport report;
  report.reference_label = reference.label;
  report.other_label = other.label;
  report.correlation = spearman(aligned.first_ranks, aligned.second_ranks);
  report.strength = strength_label(report.correlation.defined ? report.correlation.rho : 0.0);
  report.dropped_reference = aligned.dropped_first;
  report.dropped_other = aligned.dropped_second;
  if (aligned.entities.size() >= 4) {
    report.shifts = shift_distribution(quartile_classify(aligned.first),
                                       quartile_classify(aligned.second));
  }
  report.topk = topk_overlap(aligned.first, aligned.second, percentages);
  return report;
}

void write_ranking_csv(const RankingList& ranking, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  csv::write_row(out, {"label", "level", "direction", "entity_id", "score", "rank"});
  const auto direction = to_string(ranking.direction);
  for (const auto& e : ranking.entries) {
    csv::write_row(out, {ranking.label, ranking.level, direction, e.entity_id,
                         csv::format_real(e.score), csv::format_real(e.rank)});
  }
}

RankingList read_ranking_csv(const std::filesystem::path& path) {
  auto table = csv::Table::read(path, {"label", "entity_id", "score"});
  if (table.rows().empty()) throw ValidationError(path.string() + ": empty ranking");
  std::string label;
  std::string level = "university";
  std::optional<Direction> direction;
  std::map<std::string, double> scores;
  for (const auto& row : table.rows()) {
    const auto& l = row.text("label");
    if (label.empty()) label = l;
    if (l != label) row.fail("mixed labels in one ranking file");
    if (auto lv = row.optional_text("level")) level = *lv;
    Direction d = Direction::higher_is_better;
    if (auto dt = row.optional_text("direction")) {
      auto parsed = parse_direction(*dt);
      if (!parsed) row.fail("unknown direction '" + *dt + "'");
      d = *parsed;
    }
    if (direction && *direction != d) row.fail("mixed directions in one ranking file");
    direction = d;
    const auto& id = row.text("entity_id");
    if (id.empty()) row.fail("empty entity_id");
    const double score = row.real("score");
    if (std::isnan(score)) row.fail("NaN score");
    if (!scores.emplace(id, score).second) row.fail("duplicate entity " + id);
  }
  if (label.empty()) label = path.stem().string();
  return build_ranking(label, scores, direction.value_or(Direction::higher_is_better), level);
}

}  // namespace rankeval
