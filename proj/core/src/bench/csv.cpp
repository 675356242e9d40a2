#include "gcarpa/bench/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gcarpa/errors.hpp"

namespace gcarpa::bench {

namespace {

bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

void append_field(std::string& out, std::string_view field) {
  if (!needs_quotes(field)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out.push_back(',');
    append_field(out, row[i]);
  }
  out.push_back('\n');
}

}  // namespace

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw InputError("csv: row has " + std::to_string(row.size()) + " fields, header has " +
                     std::to_string(header.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw InputError("csv: cannot format value");
  return std::string(buf.data(), end);
}

double parse_real(std::string_view text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw InputError("csv: not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string to_csv_text(const CsvTable& t) {
  std::string out;
  append_row(out, t.header);
  for (const auto& row : t.rows) append_row(out, row);
  return out;
}

CsvTable parse_csv_text(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool at_field_start = true;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && at_field_start) {
      quoted = true;
      at_field_start = false;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      at_field_start = true;
    } else if (c == '\n') {
      record.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(record));
      record.clear();
      at_field_start = true;
    } else if (c != '\r') {
      field.push_back(c);
      at_field_start = false;
    }
  }
  if (quoted) throw InputError("csv: unterminated quoted field");
  if (!field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw InputError("csv: missing header");
  CsvTable t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) t.add_row(std::move(records[r]));
  return t;
}

void write_csv(const std::filesystem::path& path, const CsvTable& t) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("csv: cannot write '" + path.string() + "'");
  out << to_csv_text(t);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("csv: cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv_text(ss.str());
}

CsvTable run_table(const operators::RunRecord& rec) {
  CsvTable t;
  t.header = {"k", "fpr", "feas", "support"};
  t.rows.reserve(rec.fpr_history.size());
  for (std::size_t i = 0; i < rec.fpr_history.size(); ++i) {
    std::string feas = i < rec.feas_history.size() ? format_real(rec.feas_history[i]) : std::string();
    std::string support;
    if (rec.support_history && i < rec.support_history->size()) {
      support = std::to_string((*rec.support_history)[i]);
    }
    t.rows.push_back({std::to_string(i + 1), format_real(rec.fpr_history[i]), std::move(feas), std::move(support)});
  }
  return t;
}

}  // namespace gcarpa::bench
