#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankeval::csv {

struct Schema {
  std::string name;
  std::vector<std::string> header;
  std::map<std::string, std::size_t, std::less<>> index;
};

// One data row; accessors report file and line on failure.
class Row {
 public:
  Row(std::shared_ptr<const Schema> schema, std::size_t line, std::vector<std::string> fields)
      : schema_(std::move(schema)), line_(line), fields_(std::move(fields)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& file() const;

  bool has(std::string_view column) const;
  // Raw field; throws ValidationError when the column is not in the header.
  const std::string& text(std::string_view column) const;
  std::optional<std::string> optional_text(std::string_view column) const;

  std::int64_t integer(std::string_view column) const;
  std::optional<std::int64_t> optional_integer(std::string_view column) const;
  double real(std::string_view column) const;
  std::optional<double> optional_real(std::string_view column) const;
  bool boolean(std::string_view column) const;

  [[noreturn]] void fail(const std::string& message) const;

 private:
  std::shared_ptr<const Schema> schema_;
  std::size_t line_;
  std::vector<std::string> fields_;
};

class Table {
 public:
  // Reads a comma-delimited UTF-8 file. A zero-byte file is an empty table;
  // otherwise the first line is the header and must contain `required`.
  static Table read(const std::filesystem::path& path,
                    const std::vector<std::string>& required);
  static Table parse(std::string name, std::istream& in,
                     const std::vector<std::string>& required);

  const std::string& name() const noexcept { return schema_->name; }
  const std::vector<std::string>& header() const noexcept { return schema_->header; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  bool has_column(std::string_view name) const { return schema_->index.contains(name); }

 private:
  Table() = default;

  std::shared_ptr<const Schema> schema_;
  std::vector<Row> rows_;
};

// Splits one physical line into fields, honoring double-quoted fields.
std::vector<std::string> split_line(std::string_view line, bool* ok = nullptr);

// Quotes a field when it contains a delimiter, quote or whitespace edge.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);
// Fixed-point text with `digits` decimals, independent of the global locale.
std::string format_fixed(double value, int digits);

}  // namespace rankeval::csv
