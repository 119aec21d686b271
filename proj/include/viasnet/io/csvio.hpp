#pragma once

#include <string>
#include <vector>

namespace viasnet::io {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int column(const std::string& name) const; // -1 when absent
};

void write_csv(const std::string& path, const CsvTable& t);
CsvTable read_csv(const std::string& path);

// Stable float formatting for CSV cells: shortest round-trip form, NaN -> "".
std::string csv_num(double v);

} // namespace viasnet::io
