// table.hpp: comma-separated result tables with a single '#' header row

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace bathforge {

using Cell = std::variant<double, std::int64_t, std::string>;

// Column headers carry their unit in brackets, e.g. "t[s]".
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::size_t column_index(const std::string& name) const;
    double number(std::size_t row, std::size_t col) const;
};

// Doubles are printed with 17 significant digits so tables round-trip and
// are byte-stable across runs.
std::string format_double(double v);
std::string format_cell(const Cell& c);

void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);
void write_csv(const std::string& path, const Table& table);

} // namespace bathforge
