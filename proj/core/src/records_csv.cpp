#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "regiongis/catalog.hpp"
#include "regiongis/error.hpp"

namespace regiongis {
namespace {

constexpr std::array<std::string_view, 6> kColumns = {"district_id", "category", "commodity",
                                                      "quantity",    "unit",     "year"};

[[noreturn]] void schema_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::CsvSchemaError, "line " + std::to_string(line) + ": " + what, std::nullopt, line);
}

// Splits one physical line into fields. Quoted fields may contain commas and
// doubled quotes but not line breaks.
std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0;
  while (true) {
    field.clear();
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) schema_error(line_no, "unterminated quoted field");
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += line[i++];
      }
      if (i < line.size() && line[i] != ',') schema_error(line_no, "unexpected text after closing quote");
    } else {
      while (i < line.size() && line[i] != ',') {
        if (line[i] == '"') schema_error(line_no, "stray quote in unquoted field");
        field += line[i++];
      }
    }
    fields.push_back(field);
    if (i >= line.size()) break;
    ++i;  // comma
  }
  return fields;
}

// Shortest fixed-notation text that parses back to the same double.
std::string format_quantity(double v) {
  char buf[400];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, ptr);
}

void write_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

double parse_quantity(const std::string& s, std::size_t line_no) {
  double value = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value, std::chars_format::fixed);
  if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    schema_error(line_no, "quantity \"" + s + "\" is not a decimal number");
  }
  if (value < 0.0) {
    throw Error(ErrorCode::NegativeQuantity,
                "line " + std::to_string(line_no) + ": quantity " + s + " is negative", std::nullopt, line_no);
  }
  return value == 0.0 ? 0.0 : value;
}

int parse_year(const std::string& s, std::size_t line_no) {
  int value = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) schema_error(line_no, "year \"" + s + "\" is not an integer");
  return value;
}

}  // namespace

std::vector<ParsedRecord> parse_records_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<ParsedRecord> out;
  bool saw_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.ends_with('\r')) line.remove_suffix(1);

    if (!saw_header) {
      saw_header = true;
      const auto header = split_fields(line, line_no);
      for (const auto& col : kColumns) {
        if (std::find(header.begin(), header.end(), col) == header.end()) {
          schema_error(line_no, "missing column \"" + std::string(col) + "\"");
        }
      }
      for (const auto& col : header) {
        if (std::find(kColumns.begin(), kColumns.end(), col) == kColumns.end()) {
          schema_error(line_no, "unexpected column \"" + col + "\"");
        }
      }
      if (header.size() != kColumns.size() || !std::equal(header.begin(), header.end(), kColumns.begin())) {
        schema_error(line_no, "header must be exactly: " + std::string(kRecordsCsvHeader));
      }
      continue;
    }
    if (line.empty()) continue;

    const auto fields = split_fields(line, line_no);
    if (fields.size() != kColumns.size()) {
      schema_error(line_no, "expected " + std::to_string(kColumns.size()) + " fields, found " +
                                std::to_string(fields.size()));
    }
    ParsedRecord row;
    row.line = line_no;
    PotentialRecord& r = row.record;
    r.district_id = fields[0];
    if (r.district_id.empty()) schema_error(line_no, "district_id is empty");
    const auto category = parse_category(fields[1]);
    if (!category) {
      schema_error(line_no, "unknown category \"" + fields[1] + "\" (agriculture, plantation, industry)");
    }
    r.category = *category;
    r.commodity = fields[2];
    if (r.commodity.empty()) schema_error(line_no, "commodity is empty");
    r.quantity = parse_quantity(fields[3], line_no);
    r.unit = fields[4];
    if (r.unit.empty()) schema_error(line_no, "unit is empty");
    r.year = parse_year(fields[5], line_no);
    out.push_back(std::move(row));
  }
  if (!saw_header) schema_error(1, "missing header row");
  return out;
}

std::string write_records_csv(std::span<const PotentialRecord> records) {
  std::string out(kRecordsCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    write_field(out, r.district_id);
    out += ',';
    out += category_name(r.category);
    out += ',';
    write_field(out, r.commodity);
    out += ',';
    out += format_quantity(r.quantity);
    out += ',';
    write_field(out, r.unit);
    out += ',';
    out += std::to_string(r.year);
    out += '\n';
  }
  return out;
}

}  // namespace regiongis
