#include "rankeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rankeval/csv.hpp"

namespace rankeval {

namespace {

std::string percent(double fraction) { return csv::format_fixed(100.0 * fraction, 2) + "%"; }

std::string pair_label(const ComparisonReport& r) { return r.other_label + " vs " + r.reference_label; }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ";";
    out += items[i];
  }
  return out;
}

nlohmann::json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

// Display width in code points, so that "≤" pads like one column.
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::markdown: return "markdown";
  }
  return "csv";
}

std::optional<OutputFormat> parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  if (text == "markdown" || text == "md") return OutputFormat::markdown;
  return std::nullopt;
}

ComparisonSet compare_all(const std::vector<RankingList>& rankings,
                          const std::vector<double>& percentages, Execution execution) {
  ComparisonSet set;
  set.matrix = correlation_matrix(rankings, execution);
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    for (std::size_t j = i + 1; j < rankings.size(); ++j) {
      set.pairs.push_back(compare_rankings(rankings[i], rankings[j], percentages));
    }
  }
  return set;
}

std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header.size(), 3);
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = std::max(widths[c], display_width(header[c]));
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
      widths[c] = std::max(widths[c], display_width(row[c]));
    }
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (std::size_t c = 0; c < widths.size(); ++c) {
      const std::string cell = c < cells.size() ? cells[c] : "";
      out << ' ' << cell << std::string(widths[c] - display_width(cell), ' ') << " |";
    }
    out << '\n';
  };
  emit(header);
  out << '|';
  for (std::size_t c = 0; c < widths.size(); ++c) out << std::string(widths[c] + 2, '-') << '|';
  out << '\n';
  for (const auto& row : rows) emit(row);
  return out.str();
}

std::string render_matrix_markdown(const CorrelationMatrix& matrix) {
  const std::size_t m = matrix.labels.size();
  std::vector<std::string> header{""};
  header.insert(header.end(), matrix.labels.begin(), matrix.labels.end());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::string> row{matrix.labels[i]};
    for (std::size_t j = 0; j < m; ++j) {
      if (j > i) {
        row.emplace_back();
        continue;
      }
      const auto& cell = matrix.at(i, j);
      if (!cell.defined) {
        row.emplace_back("n/a");
      } else if (i == j) {
        row.push_back(csv::format_fixed(1.0, 4));
      } else {
        row.push_back(csv::format_fixed(cell.rho, 4) + (cell.significant ? "*" : ""));
      }
    }
    rows.push_back(std::move(row));
  }
  return markdown_table(header, rows) + "\n\\* p-value < 0.05\n";
}

std::string render_shifts_markdown(const std::vector<ComparisonReport>& pairs) {
  std::vector<std::string> header{"Changes"};
  for (const auto& p : pairs) header.push_back(pair_label(p));
  std::vector<std::vector<std::string>> relative;
  std::vector<std::vector<std::string>> cumulative;
  for (std::size_t s = 0; s < 4; ++s) {
    std::vector<std::string> rel{std::to_string(s)};
    std::vector<std::string> cum{"≤ " + std::to_string(s)};
    for (const auto& p : pairs) {
      rel.push_back(p.shifts.n == 0 ? "n/a" : percent(p.shifts.relative[s]));
      cum.push_back(p.shifts.n == 0 ? "n/a" : percent(p.shifts.cumulative[s]));
    }
    relative.push_back(std::move(rel));
    cumulative.push_back(std::move(cum));
  }
  return "Relative frequency distributions\n\n" + markdown_table(header, relative) +
         "\nCumulative frequency distributions\n\n" + markdown_table(header, cumulative);
}

std::string render_topk_markdown(const std::vector<ComparisonReport>& pairs) {
  std::vector<std::string> header{"Top"};
  for (const auto& p : pairs) {
    header.push_back(pair_label(p) + " variations");
    header.push_back("Percentage");
  }
  std::vector<std::vector<std::string>> rows;
  const std::size_t count = pairs.empty() ? 0 : pairs.front().topk.size();
  for (std::size_t r = 0; r < count; ++r) {
    std::vector<std::string> row{csv::format_real(pairs.front().topk[r].percentage) + "%"};
    for (const auto& p : pairs) {
      const auto& t = p.topk[r];
      if (t.empty) {
        row.emplace_back("empty (k = 0)");
        row.emplace_back("n/a");
      } else {
        row.push_back(std::to_string(t.variations) + " out of " + std::to_string(t.k));
        row.push_back(csv::format_fixed(t.variation_pct, 2) + "%");
      }
    }
    rows.push_back(std::move(row));
  }
  return markdown_table(header, rows);
}

std::string render_comparison_markdown(const ComparisonSet& set) {
  std::ostringstream out;
  out << "# Ranking comparison\n\n";
  std::vector<std::vector<std::string>> summary;
  for (const auto& p : set.pairs) {
    summary.push_back({pair_label(p), std::to_string(p.correlation.n),
                       std::to_string(p.dropped_reference.size()),
                       std::to_string(p.dropped_other.size()),
                       p.correlation.defined ? csv::format_fixed(p.correlation.rho, 4) : "n/a",
                       p.correlation.defined ? csv::format_fixed(p.correlation.p_value, 4) : "n/a",
                       to_string(p.strength)});
  }
  out << markdown_table({"Pair", "Common", "Dropped (reference)", "Dropped (other)", "rho",
                         "p-value", "Strength"},
                        summary)
      << "\n## Spearman correlation matrix\n\n"
      << render_matrix_markdown(set.matrix) << "\n## Distributions of change in quartile\n\n"
      << render_shifts_markdown(set.pairs) << "\n## Top-k variation\n\n"
      << render_topk_markdown(set.pairs);
  return out.str();
}

std::string render_comparison_json(const ComparisonSet& set) {
  nlohmann::ordered_json doc;
  auto& matrix = doc["correlation_matrix"];
  matrix["labels"] = set.matrix.labels;
  auto& cells = matrix["cells"] = nlohmann::ordered_json::array();
  const std::size_t m = set.matrix.labels.size();
  for (std::size_t i = 0; i < m; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m; ++j) {
      const auto& c = set.matrix.at(i, j);
      row.push_back({{"rho", number_or_null(c.rho)},
                     {"p_value", number_or_null(c.p_value)},
                     {"significant", c.significant},
                     {"n", c.n}});
    }
    cells.push_back(std::move(row));
  }
  auto& pairs = doc["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : set.pairs) {
    nlohmann::ordered_json j;
    j["reference"] = p.reference_label;
    j["other"] = p.other_label;
    j["n"] = p.correlation.n;
    j["rho"] = number_or_null(p.correlation.rho);
    j["p_value"] = number_or_null(p.correlation.p_value);
    j["strength"] = to_string(p.strength);
    j["dropped_reference"] = p.dropped_reference;
    j["dropped_other"] = p.dropped_other;
    j["shift_counts"] = p.shifts.counts;
    j["shift_relative"] = p.shifts.relative;
    j["shift_cumulative"] = p.shifts.cumulative;
    auto& topk = j["topk"] = nlohmann::ordered_json::array();
    for (const auto& t : p.topk) {
      topk.push_back({{"percentage", t.percentage},
                      {"k", t.k},
                      {"variations", t.variations},
                      {"variation_pct", t.variation_pct},
                      {"empty", t.empty}});
    }
    pairs.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_comparison(const ComparisonSet& set, OutputFormat format,
                                                    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  if (format == OutputFormat::json) {
    written.push_back(out_dir / "comparison.json");
    write_file(written.back(), render_comparison_json(set));
    return written;
  }
  if (format == OutputFormat::markdown) {
    written.push_back(out_dir / "comparison.md");
    write_file(written.back(), render_comparison_markdown(set));
    return written;
  }

  std::ostringstream matrix;
  csv::write_row(matrix, {"row", "column", "rho", "p_value", "significant", "n"});
  const std::size_t m = set.matrix.labels.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& c = set.matrix.at(i, j);
      csv::write_row(matrix, {set.matrix.labels[i], set.matrix.labels[j],
                              c.defined ? csv::format_real(c.rho) : "",
                              c.defined ? csv::format_real(c.p_value) : "",
                              c.significant ? "1" : "0", std::to_string(c.n)});
    }
  }
  std::ostringstream summary;
  csv::write_row(summary, {"reference", "other", "n", "rho", "p_value", "strength",
                           "dropped_reference", "dropped_other"});
  std::ostringstream shifts;
  csv::write_row(shifts, {"reference", "other", "shift", "count", "relative", "cumulative"});
  std::ostringstream topk;
  csv::write_row(topk, {"reference", "other", "percentage", "k", "variations", "variation_pct",
                        "empty"});
  for (const auto& p : set.pairs) {
    csv::write_row(summary, {p.reference_label, p.other_label, std::to_string(p.correlation.n),
                             p.correlation.defined ? csv::format_real(p.correlation.rho) : "",
                             p.correlation.defined ? csv::format_real(p.correlation.p_value) : "",
                             to_string(p.strength), join(p.dropped_reference),
                             join(p.dropped_other)});
    for (std::size_t s = 0; s < 4 && p.shifts.n > 0; ++s) {
      csv::write_row(shifts, {p.reference_label, p.other_label, std::to_string(s),
                              std::to_string(p.shifts.counts[s]),
                              csv::format_real(p.shifts.relative[s]),
                              csv::format_real(p.shifts.cumulative[s])});
    }
    for (const auto& t : p.topk) {
      csv::write_row(topk, {p.reference_label, p.other_label, csv::format_real(t.percentage),
                            std::to_string(t.k), std::to_string(t.variations),
                            csv::format_real(t.variation_pct), t.empty ? "1" : "0"});
    }
  }
  const std::pair<const char*, std::string> files[] = {
      {"correlation_matrix.csv", matrix.str()},
      {"pairs.csv", summary.str()},
      {"shift_distribution.csv", shifts.str()},
      {"topk.csv", topk.str()},
  };
  for (const auto& [name, text] : files) {
    written.push_back(out_dir / name);
    write_file(written.back(), text);
  }
  return written;
}

}  // namespace rankeval
