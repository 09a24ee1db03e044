#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rankeval/corpus.hpp"

namespace rankeval {

// Grade weights in tenths: excellent 1.0, good 0.8, acceptable 0.6, limited 0.2.
inline constexpr int kExcellentTenths = 10;
inline constexpr int kGoodTenths = 8;
inline constexpr int kAcceptableTenths = 6;
inline constexpr int kLimitedTenths = 2;

// R = (E + 0.8 G + 0.6 A + 0.2 L) / T, evaluated as one integer ratio so that
// equal ratings compare equal. Throws ValidationError when T = 0 or when the
// counts do not add up to T.
double vtr_rating(const PeerOutcome& outcome);

// Position-based category ranking in percent: 100 (n - pos) / (n - 1).
// The block tied at the top rating gets 100; any other tie block takes the
// last position it occupies. A single university gets 100.
std::map<std::string, double> category_percentile(
    const std::vector<std::pair<std::string, double>>& ratings);

struct RatedOutcome {
  std::string university_id;
  std::string uda_id;
  double rating = 0.0;
  double category_percentile = 0.0;
  bool operator==(const RatedOutcome&) const = default;
};

// Rates every outcome; percentiles are computed within each UDA.
// Output is ordered by UDA, then by descending rating, then university_id.
std::vector<RatedOutcome> rate_outcomes(const std::vector<PeerOutcome>& outcomes);

// Pools the counts of each university over all UDAs (uda_id "all").
std::vector<PeerOutcome> pool_by_university(const std::vector<PeerOutcome>& outcomes);

// university_id,uda_id,R,category_percentile
void write_rated_csv(const std::vector<RatedOutcome>& rated, const std::filesystem::path& path);
std::vector<RatedOutcome> read_rated_csv(const std::filesystem::path& path);

}  // namespace rankeval
