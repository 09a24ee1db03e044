#include "rankeval/peer_rating.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rankeval/csv.hpp"
#include "rankeval/error.hpp"

namespace rankeval {

double vtr_rating(const PeerOutcome& o) {
  if (o.total <= 0) {
    throw ValidationError("(" + o.university_id + ", " + o.uda_id + "): no submitted outputs");
  }
  if (o.excellent < 0 || o.good < 0 || o.acceptable < 0 || o.limited < 0 ||
      o.excellent + o.good + o.acceptable + o.limited != o.total) {
    throw ValidationError("(" + o.university_id + ", " + o.uda_id +
                          "): E + G + A + L does not equal T");
  }
  const std::int64_t tenths = kExcellentTenths * o.excellent + kGoodTenths * o.good +
                              kAcceptableTenths * o.acceptable + kLimitedTenths * o.limited;
  return static_cast<double>(tenths) / static_cast<double>(10 * o.total);
}

std::map<std::string, double> category_percentile(
    const std::vector<std::pair<std::string, double>>& ratings) {
  std::map<std::string, double> out;
  if (ratings.empty()) return out;
  for (const auto& [uni, r] : ratings) {
    if (std::isnan(r)) throw ComputationError("NaN rating for " + uni);
  }
  auto sorted = ratings;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const std::size_t n = sorted.size();
  if (n == 1) {
    out.emplace(sorted.front().first, 100.0);
    return out;
  }
  const double top = sorted.front().second;
  std::size_t begin = 0;
  while (begin < n) {
    std::size_t end = begin;
    while (end < n && sorted[end].second == sorted[begin].second) ++end;
    // Block occupies 1-based positions begin+1 .. end.
    const double pct = sorted[begin].second == top
                           ? 100.0
                           : 100.0 * static_cast<double>(n - end) / static_cast<double>(n - 1);
    for (std::size_t i = begin; i < end; ++i) {
      if (!out.emplace(sorted[i].first, pct).second) {
        throw ComputationError("duplicate university " + sorted[i].first + " in ratings");
      }
    }
    begin = end;
  }
  return out;
}

std::vector<RatedOutcome> rate_outcomes(const std::vector<PeerOutcome>& outcomes) {
  std::map<std::string, std::vector<std::pair<std::string, double>>> by_uda;
  for (const auto& o : outcomes) by_uda[o.uda_id].emplace_back(o.university_id, vtr_rating(o));
  std::vector<RatedOutcome> rated;
  rated.reserve(outcomes.size());
  for (const auto& [uda, ratings] : by_uda) {
    const auto pct = category_percentile(ratings);
    std::vector<RatedOutcome> block;
    for (const auto& [uni, r] : ratings) block.push_back({uni, uda, r, pct.at(uni)});
    std::sort(block.begin(), block.end(), [](const auto& a, const auto& b) {
      if (a.rating != b.rating) return a.rating > b.rating;
      return a.university_id < b.university_id;
    });
    rated.insert(rated.end(), block.begin(), block.end());
  }
  return rated;
}

std::vector<PeerOutcome> pool_by_university(const std::vector<PeerOutcome>& outcomes) {
  std::map<std::string, PeerOutcome> pooled;
  for (const auto& o : outcomes) {
    auto& p = pooled[o.university_id];
    p.university_id = o.university_id;
    p.uda_id = "all";
    p.excellent += o.excellent;
    p.good += o.good;
    p.acceptable += o.acceptable;
    p.limited += o.limited;
    p.total += o.total;
  }
  std::vector<PeerOutcome> out;
  out.reserve(pooled.size());
  for (auto& [uni, p] : pooled) out.push_back(std::move(p));
  return out;
}

void write_rated_csv(const std::vector<RatedOutcome>& rated, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  csv::write_row(out, {"university_id", "uda_id", "R", "category_percentile"});
  for (const auto& r : rated) {
    csv::write_row(out, {r.university_id, r.uda_id, csv::format_real(r.rating),
                         csv::format_real(r.category_percentile)});
  }
}

std::vector<RatedOutcome> read_rated_csv(const std::filesystem::path& path) {
  auto table = csv::Table::read(path, {"university_id", "uda_id", "R", "category_percentile"});
  std::vector<RatedOutcome> out;
  for (const auto& row : table.rows()) {
    RatedOutcome r;
    r.university_id = row.text("university_id");
    r.uda_id = row.text("uda_id");
    r.rating = row.real("R");
    r.category_percentile = row.real("category_percentile");
    if (r.university_id.empty() || r.uda_id.empty()) row.fail("empty university_id or uda_id");
    if (!(r.rating >= 0.0 && r.rating <= 1.0)) row.fail("R outside [0, 1]");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rankeval
