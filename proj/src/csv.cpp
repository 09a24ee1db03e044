#include "rankeval/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "rankeval/error.hpp"

namespace rankeval::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line, bool* ok) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  bool good = true;
  auto finish = [&] {
    fields.emplace_back(was_quoted ? std::string_view(current) : trim(current));
    current.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && !was_quoted && trim(current).empty()) {
      current.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      finish();
    } else if (!was_quoted) {
      current.push_back(c);
    } else if (c != ' ' && c != '\t') {
      good = false;
    }
  }
  if (quoted) good = false;
  finish();
  if (ok != nullptr) *ok = good;
  return fields;
}

std::string escape(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\n\r") != std::string_view::npos ||
      (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_fixed(double value, int digits) {
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  if (ec != std::errc()) return format_real(value);
  std::string out(buf, ptr);
  // "-0.0000" reads badly in reports.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

// ---------------------------------------------------------------------------

Table Table::read(const std::filesystem::path& path, const std::vector<std::string>& required) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string() + ": cannot open file");
  return parse(path.string(), in, required);
}

Table Table::parse(std::string name, std::istream& in, const std::vector<std::string>& required) {
  auto schema = std::make_shared<Schema>();
  schema->name = std::move(name);
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    bool ok = true;
    auto fields = split_line(line, &ok);
    if (!ok) throw ValidationError(schema->name, line_no, "unterminated quote");
    if (!have_header) {
      schema->header = std::move(fields);
      for (std::size_t i = 0; i < schema->header.size(); ++i) {
        if (!schema->index.emplace(schema->header[i], i).second) {
          throw ValidationError(schema->name, line_no,
                                "duplicate column '" + schema->header[i] + "'");
        }
      }
      for (const auto& col : required) {
        if (!schema->index.contains(col)) {
          throw ValidationError(schema->name, line_no, "missing required column '" + col + "'");
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() != schema->header.size()) {
      throw ValidationError(schema->name, line_no,
                            "expected " + std::to_string(schema->header.size()) +
                                " fields, found " + std::to_string(fields.size()));
    }
    table.rows_.emplace_back(schema, line_no, std::move(fields));
  }
  table.schema_ = std::move(schema);
  return table;
}

// ---------------------------------------------------------------------------

const std::string& Row::file() const { return schema_->name; }

void Row::fail(const std::string& message) const {
  throw ValidationError(schema_->name, line_, message);
}

bool Row::has(std::string_view column) const { return schema_->index.contains(column); }

const std::string& Row::text(std::string_view column) const {
  auto it = schema_->index.find(column);
  if (it == schema_->index.end()) fail("missing column '" + std::string(column) + "'");
  return fields_[it->second];
}

std::optional<std::string> Row::optional_text(std::string_view column) const {
  auto it = schema_->index.find(column);
  if (it == schema_->index.end() || fields_[it->second].empty()) return std::nullopt;
  return fields_[it->second];
}

std::optional<std::int64_t> Row::optional_integer(std::string_view column) const {
  auto raw = optional_text(column);
  if (!raw) return std::nullopt;
  std::int64_t value = 0;
  const char* first = raw->data();
  const char* last = first + raw->size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail("column '" + std::string(column) + "': expected integer, got '" + *raw + "'");
  }
  return value;
}

std::int64_t Row::integer(std::string_view column) const {
  auto v = optional_integer(column);
  if (!v) fail("column '" + std::string(column) + "': value required");
  return *v;
}

std::optional<double> Row::optional_real(std::string_view column) const {
  auto raw = optional_text(column);
  if (!raw) return std::nullopt;
  double value = 0;
  const char* first = raw->data();
  const char* last = first + raw->size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    fail("column '" + std::string(column) + "': expected number, got '" + *raw + "'");
  }
  return value;
}

double Row::real(std::string_view column) const {
  auto v = optional_real(column);
  if (!v) fail("column '" + std::string(column) + "': value required");
  return *v;
}

bool Row::boolean(std::string_view column) const {
  const auto& raw = text(column);
  if (raw == "1" || raw == "true" || raw == "TRUE" || raw == "True" || raw == "yes") return true;
  if (raw == "0" || raw == "false" || raw == "FALSE" || raw == "False" || raw == "no") return false;
  fail("column '" + std::string(column) + "': expected boolean, got '" + raw + "'");
}

}  // namespace rankeval::csv
