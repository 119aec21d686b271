#include "viasnet/io/csvio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace viasnet::io {

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

void write_csv(const std::string& path, const CsvTable& t) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("csv: cannot open " + path + " for writing");
    out << join(t.header) << '\n';
    for (const auto& row : t.rows) out << join(row) << '\n';
    if (!out) throw std::runtime_error("csv: short write to " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    CsvTable t;
    std::string line;
    if (std::getline(in, line)) t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        t.rows.push_back(split(line));
    }
    return t;
}

std::string csv_num(double v) {
    if (std::isnan(v)) return "";
    return fmt::format("{}", v);
}

} // namespace viasnet::io
