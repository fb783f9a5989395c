#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eitdicke {

/// Fixed 9-significant-digit rendering used by every CSV output. Negative
/// zero prints as "0" so outputs stay byte-stable.
std::string format_number(double value);

/// An in-memory CSV document: header row, data rows, and optional trailing
/// '#'-prefixed comment lines. Serialized with LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
};

/// Parsed CSV input. Lines starting with '#' and blank lines are skipped.
class CsvData {
 public:
  static CsvData parse(std::string_view text);
  /// Throws IoError when the file cannot be read.
  static CsvData read(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t row_count() const { return rows_.size(); }

  bool has_column(std::string_view name) const;
  /// Throws ConfigError naming the column when absent.
  std::size_t column_index(std::string_view name) const;
  /// Numeric column; throws ConfigError with the file line number of the
  /// first non-numeric cell.
  std::vector<double> numeric_column(std::string_view name) const;
  const std::string& cell(std::size_t row, std::size_t column) const { return rows_.at(row).at(column); }
  std::size_t line_number(std::size_t row) const { return lines_.at(row); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> lines_;
};

void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Strict full-string floating-point parse (no trailing characters).
bool parse_double(std::string_view text, double& out);

}  // namespace eitdicke
