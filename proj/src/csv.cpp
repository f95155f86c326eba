#include "al/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace al::csv {

namespace {
std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        size_t p = cell.find_first_not_of(' ');
        out.push_back(p == std::string::npos ? std::string{} : cell.substr(p));
    }
    return out;
}
}  // namespace

std::vector<std::vector<double>> read(const std::string& path, const std::vector<std::string>& columns) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    bool header = false;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (!header) {
            if (cells != columns) throw std::runtime_error("unexpected CSV header in " + path);
            header = true;
            continue;
        }
        if (cells.size() != columns.size()) throw std::runtime_error("ragged CSV row in " + path);
        std::vector<double> r;
        for (const auto& c : cells) r.push_back(std::stod(c));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Writer::Writer(const std::string& path, const std::vector<std::string>& columns)
    : out_(path), width_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot write " + path);
    out_ << "# schema_version=" << schema_version << '\n';
    for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void Writer::row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::logic_error("CSV row width mismatch");
    for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format(values[i]);
    out_ << '\n';
}

}  // namespace al::csv
