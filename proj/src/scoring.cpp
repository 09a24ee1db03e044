#include "rankeval/scoring.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <numeric>

#include "rankeval/csv.hpp"
#include "rankeval/error.hpp"

namespace rankeval {

double median_of(std::vector<std::int64_t>& values) {
  if (values.empty()) return 0.0;
  const std::size_t n = values.size();
  const std::size_t mid = n / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = static_cast<double>(values[mid]);
  if (n % 2 == 1) return upper;
  const double lower = static_cast<double>(*std::max_element(values.begin(), values.begin() + mid));
  return (lower + upper) / 2.0;
}

BaselineTable compute_baselines(const Corpus& corpus) {
  std::map<BaselineKey, std::vector<std::int64_t>> cells;
  for (const auto& pub : corpus.publications) {
    for (const auto& c : pub.categories) {
      cells[BaselineKey{pub.year, c.category_id}].push_back(pub.citations);
    }
  }
  BaselineTable table;
  for (auto& [key, values] : cells) {
    CitationBaseline b;
    b.count = static_cast<std::int64_t>(values.size());
    b.mean = static_cast<double>(std::accumulate(values.begin(), values.end(), std::int64_t{0})) /
             static_cast<double>(b.count);
    b.median = median_of(values);
    table.emplace(key, b);
  }
  return table;
}

StandardizedCitations standardize_citations(const PublicationRecord& pub,
                                            const BaselineTable& baselines) {
  StandardizedCitations out;
  const double cites = static_cast<double>(pub.citations);
  for (const auto& c : pub.categories) {
    auto it = baselines.find(BaselineKey{pub.year, c.category_id});
    if (it == baselines.end()) {
      throw ComputationError("publication " + pub.pub_id + ": no citation baseline for (" +
                             std::to_string(pub.year) + ", " + c.category_id + ")");
    }
    const auto& b = it->second;
    double term = 0.0;
    if (b.median > 0.0) {
      term = cites / b.median;
    } else if (b.mean > 0.0) {
      term = cites / b.mean;
    } else if (pub.citations > 0) {
      term = cites;
      out.raw_fallback = true;
    }
    out.value += c.weight * term;
  }
  return out;
}

std::vector<double> positional_weights(int n, bool first_last_same_university) {
  if (n <= 0) return {};
  if (n == 1) return {1.0};
  // Raw weights in percent; classes without members drop out of the total.
  std::vector<double> raw(static_cast<std::size_t>(n), 0.0);
  const std::size_t last = raw.size() - 1;
  double total = 0.0;
  if (first_last_same_university) {
    raw[0] = raw[last] = 40.0;
    total = 80.0;
    if (n > 2) {
      const double each = 20.0 / static_cast<double>(n - 2);
      for (std::size_t i = 1; i < last; ++i) raw[i] = each;
      total += 20.0;
    }
  } else {
    raw[0] = raw[last] = 30.0;
    total = 60.0;
    if (n >= 3) {
      raw[1] = 15.0;
      raw[last - 1] = 15.0;
      total += n == 3 ? 15.0 : 30.0;
    }
    if (n >= 5) {
      const double each = 10.0 / static_cast<double>(n - 4);
      for (std::size_t i = 2; i + 2 <= last; ++i) raw[i] = each;
      total += 10.0;
    }
  }
  for (double& w : raw) w /= total;
  return raw;
}

AuthorCredit author_fractions(const PublicationRecord& pub, const Taxonomy& taxonomy) {
  AuthorCredit credit;
  const int n = pub.total_author_count;
  if (n < 1 || pub.authors.empty()) {
    throw ComputationError("publication " + pub.pub_id + ": no author slots");
  }

  if (!is_life_science(pub, taxonomy)) {
    int domestic = 0;
    for (const auto& slot : pub.authors) {
      if (!slot.is_domestic_academic) continue;
      credit.groups[{*slot.university_id, *slot.sds_id}] += 1.0;
      ++domestic;
    }
    for (auto& [key, count] : credit.groups) count /= static_cast<double>(n);
    credit.external_residual = static_cast<double>(n - domestic) / static_cast<double>(n);
    return credit;
  }

  const AuthorSlot* first = nullptr;
  const AuthorSlot* last = nullptr;
  for (const auto& slot : pub.authors) {
    if (!slot.position) {
      throw ComputationError("publication " + pub.pub_id +
                             ": life-science credit needs every author position");
    }
    if (*slot.position == 1) first = &slot;
    if (*slot.position == n) last = &slot;
  }
  const bool same_university = n > 1 && first != nullptr && last != nullptr &&
                               first->university_id && last->university_id &&
                               *first->university_id == *last->university_id;
  const auto weights = positional_weights(n, same_university);

  std::vector<bool> domestic(static_cast<std::size_t>(n), false);
  for (const auto& slot : pub.authors) {
    if (!slot.is_domestic_academic) continue;
    const auto idx = static_cast<std::size_t>(*slot.position - 1);
    credit.groups[{*slot.university_id, *slot.sds_id}] += weights[idx];
    domestic[idx] = true;
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!domestic[i]) credit.external_residual += weights[i];
  }
  return credit;
}

namespace {

std::vector<CreditShare> shares_for(const PublicationRecord& pub, const Taxonomy& taxonomy,
                                    const BaselineTable& baselines) {
  const auto standardized = standardize_citations(pub, baselines);
  const auto credit = author_fractions(pub, taxonomy);
  std::vector<CreditShare> out;
  out.reserve(credit.groups.size());
  for (const auto& [key, fraction] : credit.groups) {
    out.push_back(CreditShare{pub.pub_id, key.first, key.second, fraction, standardized.value,
                              standardized.raw_fallback});
  }
  return out;
}

}  // namespace

std::vector<CreditShare> credit_shares(const Corpus& corpus, const BaselineTable& baselines,
                                       Execution execution) {
  const auto& pubs = corpus.publications;
  std::vector<CreditShare> shares;
  if (execution == Execution::serial) {
    for (const auto& pub : pubs) {
      auto part = shares_for(pub, corpus.taxonomy, baselines);
      shares.insert(shares.end(), std::make_move_iterator(part.begin()),
                    std::make_move_iterator(part.end()));
    }
    return shares;
  }

  const auto n = static_cast<std::ptrdiff_t>(pubs.size());
  std::vector<std::vector<CreditShare>> parts(pubs.size());
  std::vector<std::exception_ptr> errors(pubs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      parts[static_cast<std::size_t>(i)] =
          shares_for(pubs[static_cast<std::size_t>(i)], corpus.taxonomy, baselines);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  // Report the first failing publication, as the serial path would.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  shares.reserve(total);
  for (auto& p : parts) {
    shares.insert(shares.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  return shares;
}

void write_shares_csv(const std::vector<CreditShare>& shares, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  csv::write_row(out, {"pub_id", "university_id", "sds_id", "fraction", "standardized_value"});
  for (const auto& s : shares) {
    csv::write_row(out, {s.pub_id, s.university_id, s.sds_id, csv::format_real(s.fraction),
                         csv::format_real(s.standardized_value)});
  }
}

}  // namespace rankeval
