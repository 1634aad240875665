// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace trimdiff::csv {

/// Numeric table with a header row. Serialization is deterministic: fixed
/// column order, '.' decimal separator, 17 significant digits.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add_row(std::initializer_list<double> values);
};

std::string to_string(const Table& table);
void write_file(const std::string& path, const Table& table);

// Parses a numeric CSV with header row; ragged or non-numeric rows are
// errors. Optional columns are expressed by omitting them from the header.
Table read_file(const std::string& path);

// Column index by header name; -1 when absent.
int column(const Table& table, const std::string& name);

}  // namespace trimdiff::csv
