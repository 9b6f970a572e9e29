#pragma once

// Minimal RFC-4180-style CSV: header row, LF line endings, reals at 17
// significant digits so values round-trip bit-exactly.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace rossby {

using CsvCell = std::variant<double, long long, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;

    explicit CsvTable(std::vector<std::string> columns) : header(std::move(columns)) {}
    void add_row(std::vector<CsvCell> row);
};

[[nodiscard]] std::string format_real(double x);
[[nodiscard]] std::string to_csv(const CsvTable& table);

/// Throws Error(io) when the file cannot be written.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

struct CsvText {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

[[nodiscard]] CsvText parse_csv(const std::string& text);
[[nodiscard]] CsvText read_csv(const std::filesystem::path& path);

}  // namespace rossby
