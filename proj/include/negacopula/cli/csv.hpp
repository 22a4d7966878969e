#pragma once

// Minimal RFC-4180 reader/writer: comma separated, optional double quotes with
// "" escapes, LF or CRLF line ends, header row required.

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negacopula/error.hpp"

namespace negacopula::cli {

class CsvError : public Error {
public:
    CsvError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;  ///< 1-based source line of each row
};

CsvTable read_csv(std::istream& in);

/// Numeric column; empty fields and the literal NA become NaN. Throws CsvError
/// (with the header listing when the column is absent).
std::vector<double> numeric_column(const CsvTable& table, std::string_view name);

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double value);

void write_row(std::ostream& out, std::span<const std::string> fields);
void write_row(std::ostream& out, std::span<const double> values);

}  // namespace negacopula::cli
