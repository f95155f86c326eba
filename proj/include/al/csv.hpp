#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace al::csv {

inline constexpr int schema_version = 1;

// Reads numeric rows; `columns` must match the header. Lines starting
// with '#' are skipped.
std::vector<std::vector<double>> read(const std::string& path, const std::vector<std::string>& columns);

class Writer {
public:
    Writer(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

private:
    std::ofstream out_;
    size_t width_;
};

std::string format(double v);

}  // namespace al::csv
