#include "eitdicke/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eitdicke/errors.hpp"

namespace eitdicke {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

std::string CsvTable::to_string() const {
  std::string out;
  auto append_line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  append_line(header);
  for (const auto& r : rows) append_line(r);
  for (const auto& f : footer) {
    out += '#';
    out += f;
    out += '\n';
  }
  return out;
}

CsvData CsvData::parse(std::string_view text) {
  CsvData data;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    auto fields = split_fields(content);
    if (!have_header) {
      data.header_ = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != data.header_.size()) {
      throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " +
                        std::to_string(data.header_.size()) + " fields, found " + std::to_string(fields.size()));
    }
    data.rows_.push_back(std::move(fields));
    data.lines_.push_back(line_no);
  }
  if (!have_header) throw ConfigError("CSV input has no header row");
  return data;
}

CsvData CsvData::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return parse(buf.str());
}

bool CsvData::has_column(std::string_view name) const {
  for (const auto& h : header_) {
    if (h == name) return true;
  }
  return false;
}

std::size_t CsvData::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (header_[i] == name) return i;
  }
  throw ConfigError("missing CSV column '" + std::string(name) + "'");
}

std::vector<double> CsvData::numeric_column(std::string_view name) const {
  const std::size_t col = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    double v = 0.0;
    if (!parse_double(rows_[r][col], v)) {
      throw ConfigError("CSV line " + std::to_string(lines_[r]) + ": column '" + std::string(name) +
                        "' is not numeric: '" + rows_[r][col] + "'");
    }
    out.push_back(v);
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing " + path.string());
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace eitdicke
