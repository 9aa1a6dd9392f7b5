#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace phasic {

/// A parsed CSV row with its 1-based line number in the source file.
struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Plain comma-separated text without quoting. Blank lines are skipped and
/// a trailing '\r' is stripped.
struct CsvDocument {
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

/// Reads and splits a CSV file. Throws IngestionError when a row's field
/// count differs from the header's, or when the header differs from
/// `expected_header` (if given).
CsvDocument read_csv(const std::filesystem::path& path, const std::vector<std::string>& expected_header = {});

std::vector<std::string> split_csv_line(std::string_view line);

/// Parses a finite double; throws IngestionError naming the line and column.
double parse_double(std::string_view text, std::size_t line, std::string_view column);
int parse_int(std::string_view text, std::size_t line, std::string_view column);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// Writes text atomically enough for batch use: to a sibling temp file, then renamed.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace phasic
