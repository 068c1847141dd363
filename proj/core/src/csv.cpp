#include "catdiv/csv.hpp"

#include "catdiv/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace catdiv::csv {

namespace {

bool needs_quotes(std::string_view s) {
    return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_field(std::string& out, std::string_view s) {
    if (!needs_quotes(s)) {
        out += s;
        return;
    }
    out += '"';
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
}

Cell to_cell(std::string&& field, bool quoted) {
    if (quoted || field.empty()) return std::move(field);
    if (field == "nan") return std::nan("");
    if (field == "inf") return HUGE_VAL;
    if (field == "-inf") return -HUGE_VAL;
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc() && ptr == last) return v;
    return std::move(field);
}

}  // namespace

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error(ErrorCode::ParseError, "no column named '" + std::string(name) + "'");
}

double Table::number(std::size_t row, std::string_view name) const {
    const auto& cell = rows.at(row).at(column(name));
    if (const auto* v = std::get_if<double>(&cell)) return *v;
    throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ", column '" +
                                          std::string(name) + "' is not numeric");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_string(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        append_field(out, table.header[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const auto* v = std::get_if<double>(&row[i])) {
                out += format_number(*v);
            } else {
                append_field(out, std::get<std::string>(row[i]));
            }
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
    write_file(path, to_string(table));
}

Table parse_csv(std::string_view text, bool has_header) {
    std::vector<std::vector<Cell>> records;
    std::vector<Cell> record;
    std::string field;
    bool quoted = false;
    bool in_quotes = false;
    bool record_open = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(to_cell(std::move(field), quoted));
        field.clear();
        quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
        record_open = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line;
                field += ch;
            }
            continue;
        }
        switch (ch) {
            case '"':
                if (!field.empty()) {
                    throw Error(ErrorCode::ParseError,
                                "line " + std::to_string(line) + ": stray quote inside field");
                }
                in_quotes = true;
                quoted = true;
                record_open = true;
                break;
            case ',':
                end_field();
                record_open = true;
                break;
            case '\r':
                break;
            case '\n':
                if (record_open || !field.empty()) end_record();
                ++line;
                break;
            default:
                field += ch;
                record_open = true;
        }
    }
    if (in_quotes) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": unterminated quote");
    }
    if (record_open || !field.empty()) end_record();

    Table table;
    std::size_t first = 0;
    if (has_header) {
        if (records.empty()) throw Error(ErrorCode::ParseError, "missing header row");
        for (auto& cell : records.front()) {
            if (const auto* s = std::get_if<std::string>(&cell)) {
                table.header.push_back(*s);
            } else {
                table.header.push_back(format_number(std::get<double>(cell)));
            }
        }
        first = 1;
    }
    for (std::size_t r = first; r < records.size(); ++r) {
        if (has_header && records[r].size() != table.header.size()) {
            throw Error(ErrorCode::ParseError, "record " + std::to_string(r + 1) + " has " +
                                                   std::to_string(records[r].size()) +
                                                   " fields, header has " +
                                                   std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorCode::IoError, "read failed on '" + path.string() + "'");
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed on '" + path.string() + "'");
}

}  // namespace catdiv::csv
