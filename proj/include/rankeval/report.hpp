#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rankeval/rankcmp.hpp"

namespace rankeval {

enum class OutputFormat { csv, json, markdown };

std::string to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(const std::string& text);

struct ComparisonSet {
  CorrelationMatrix matrix;
  std::vector<ComparisonReport> pairs;  // every i < j, in input order
};

// Runs the matrix and every pairwise report. The earlier ranking of each pair
// is the reference for its top-k table.
ComparisonSet compare_all(const std::vector<RankingList>& rankings,
                          const std::vector<double>& percentages,
                          Execution execution = Execution::parallel);

// Lower-triangular matrix with four decimals and '*' where p < 0.05.
std::string render_matrix_markdown(const CorrelationMatrix& matrix);
// Relative and cumulative shift frequencies, one column per pair.
std::string render_shifts_markdown(const std::vector<ComparisonReport>& pairs);
// "v out of k" and percentage per top share, one column pair per comparison.
std::string render_topk_markdown(const std::vector<ComparisonReport>& pairs);
// Header with entity counts and dropped entities, followed by the three tables.
std::string render_comparison_markdown(const ComparisonSet& set);

std::string render_comparison_json(const ComparisonSet& set);

// csv:      correlation_matrix.csv, pairs.csv, shift_distribution.csv, topk.csv
// json:     comparison.json
// markdown: comparison.md
// Returns the paths written.
std::vector<std::filesystem::path> write_comparison(const ComparisonSet& set, OutputFormat format,
                                                    const std::filesystem::path& out_dir);

// Renders rows with a header as an aligned-column markdown table.
std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows);

}  // namespace rankeval
