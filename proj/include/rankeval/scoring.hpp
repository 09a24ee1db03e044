#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rankeval/corpus.hpp"
#include "rankeval/execution.hpp"

namespace rankeval {

struct BaselineKey {
  int year = 0;
  std::string category_id;
  auto operator<=>(const BaselineKey&) const = default;
};

struct CitationBaseline {
  double median = 0.0;
  double mean = 0.0;
  std::int64_t count = 0;
};

using BaselineTable = std::map<BaselineKey, CitationBaseline>;

// Median (midpoint rule for even counts) and mean of citations per
// (year, category). A publication contributes to every category it lists.
BaselineTable compute_baselines(const Corpus& corpus);

// Median with the midpoint-of-two rule; `values` is reordered.
double median_of(std::vector<std::int64_t>& values);

struct StandardizedCitations {
  double value = 0.0;
  // Set when some category had zero median and zero mean while the
  // publication was cited; that category contributed the raw count.
  bool raw_fallback = false;
};

// Weighted average over categories of citations / divisor, where the divisor
// is the cell median, else the cell mean, else undefined (see raw_fallback).
// Throws ComputationError when a category has no baseline.
StandardizedCitations standardize_citations(const PublicationRecord& pub,
                                            const BaselineTable& baselines);

using GroupKey = std::pair<std::string, std::string>;  // (university_id, sds_id)

struct AuthorCredit {
  std::map<GroupKey, double> groups;  // domestic groups only
  double external_residual = 0.0;     // credit of external and anonymous co-authors
};

// Fractional credit per (university, sds). Outside life sciences each of the
// total_author_count authors carries an equal share. In life sciences credit
// is positional: 40% to first and last and 20% split over the rest when first
// and last share a university; otherwise 30% to first and last, 15% to second
// and second-to-last, 10% split over the rest. Weight classes with no members
// (short bylines) are renormalized away.
AuthorCredit author_fractions(const PublicationRecord& pub, const Taxonomy& taxonomy);

// Per-position credit for a byline of `n` authors; index 0 is position 1.
std::vector<double> positional_weights(int n, bool first_last_same_university);

struct CreditShare {
  std::string pub_id;
  std::string university_id;
  std::string sds_id;
  double fraction = 0.0;
  double standardized_value = 0.0;
  bool raw_fallback = false;
  bool operator==(const CreditShare&) const = default;
};

// One share per (publication, domestic group), in pub_id then group order.
std::vector<CreditShare> credit_shares(const Corpus& corpus, const BaselineTable& baselines,
                                       Execution execution = Execution::parallel);

void write_shares_csv(const std::vector<CreditShare>& shares, const std::filesystem::path& path);

}  // namespace rankeval
