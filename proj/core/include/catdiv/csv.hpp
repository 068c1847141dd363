/**
 * @file csv.hpp
 * @brief Minimal RFC 4180 tables: deterministic emission and parsing
 */

#ifndef CATDIV_CSV_HPP
#define CATDIV_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace catdiv::csv {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    /// Index of a header column; throws ParseError if absent.
    std::size_t column(std::string_view name) const;
    /// Numeric value at (row, column); throws ParseError for text cells.
    double number(std::size_t row, std::string_view name) const;
};

/// Doubles use 17 significant digits ("%.17g"); nan and inf are spelled out.
std::string format_number(double v);

/// Header plus one line per row, LF terminated.
std::string to_string(const Table& table);

/// Writes to_string(table); throws IoError naming the path.
void emit_csv(const Table& table, const std::filesystem::path& path);

/**
 * Parses CSV text. The first record is the header when has_header is true.
 * Unquoted fields that parse completely as doubles become numbers.
 */
Table parse_csv(std::string_view text, bool has_header = true);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace catdiv::csv

#endif  // CATDIV_CSV_HPP
