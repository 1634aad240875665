// SPDX-License-Identifier: Apache-2.0
#include "trimdiff/csv.hpp"

#include <fstream>

#include "trimdiff/errors.hpp"
#include "trimdiff/keyvalue.hpp"

namespace trimdiff::csv {

void Table::add_row(std::initializer_list<double> values)
{
    rows.emplace_back(values);
}

std::string to_string(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i)
            out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw Error("csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += keyvalue::format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

Table read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("csv: cannot open " + path);
    Table table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            auto pos = s.find(',', start);
            cells.push_back(s.substr(start, pos - start));
            if (pos == std::string::npos)
                break;
            start = pos + 1;
        }
        return cells;
    };
    if (!std::getline(in, line))
        throw Error("csv: " + path + " is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    table.header = split(line);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto cells = split(line);
        if (cells.size() != table.header.size())
            throw Error("csv: " + path + " line " + std::to_string(line_no)
                        + " has " + std::to_string(cells.size()) + " cells, expected "
                        + std::to_string(table.header.size()));
        std::vector<double> row;
        for (const auto& cell : cells)
            row.push_back(keyvalue::parse_double(cell, path + " line "
                                                           + std::to_string(line_no)));
        table.rows.push_back(std::move(row));
    }
    return table;
}

int column(const Table& table, const std::string& name)
{
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name)
            return static_cast<int>(i);
    return -1;
}

void write_file(const std::string& path, const Table& table)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("csv: cannot open " + path + " for writing");
    out << to_string(table);
    if (!out)
        throw Error("csv: write failed for " + path);
}

}  // namespace trimdiff::csv
