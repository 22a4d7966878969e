#include "negacopula/cli/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace negacopula::cli {
namespace {

// Splits one record starting at `line`; quoted fields may span physical lines.
bool read_record(std::istream& in, std::size_t& line, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    char c = 0;
    while (in.get(c)) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            ++line;
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(c);
        }
    }
    if (in_quotes) throw CsvError(line, "unterminated quoted field");
    if (!any) return false;
    if (!field.empty() && field.back() == '\r') field.pop_back();
    fields.push_back(std::move(field));
    return true;
}

bool blank(const std::vector<std::string>& fields) {
    return fields.size() == 1 && fields[0].empty();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool needs_quotes(std::string_view s) {
    return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::size_t line = 1;
    std::vector<std::string> fields;
    std::size_t start = line;
    if (!read_record(in, line, fields) || blank(fields)) throw CsvError(1, "missing header row");
    table.header = fields;
    while (true) {
        start = line;
        if (!read_record(in, line, fields)) break;
        if (blank(fields)) continue;
        if (fields.size() != table.header.size()) {
            throw CsvError(start, "expected " + std::to_string(table.header.size()) +
                                      " fields, found " + std::to_string(fields.size()));
        }
        table.rows.push_back(fields);
        table.row_lines.push_back(start);
    }
    return table;
}

std::vector<double> numeric_column(const CsvTable& table, std::string_view name) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
        std::string available;
        for (const auto& h : table.header) available += (available.empty() ? "" : ", ") + h;
        throw CsvError(1, "no column named '" + std::string(name) + "'; available: " + available);
    }
    const auto col = static_cast<std::size_t>(it - table.header.begin());
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string_view text = trim(table.rows[r][col]);
        if (text.empty() || text == "NA") {
            values.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw CsvError(table.row_lines[r], "column '" + std::string(name) +
                                                   "': cannot parse '" + std::string(text) +
                                                   "' as a number");
        }
        values.push_back(value);
    }
    return values;
}

std::string format_number(double value) {
    std::array<char, 64> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

void write_row(std::ostream& out, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << ',';
        if (needs_quotes(fields[i])) {
            out << '"';
            for (char c : fields[i]) {
                if (c == '"') out << '"';
                out << c;
            }
            out << '"';
        } else {
            out << fields[i];
        }
    }
    out << '\n';
}

void write_row(std::ostream& out, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out << ',';
        out << format_number(values[i]);
    }
    out << '\n';
}

}  // namespace negacopula::cli
