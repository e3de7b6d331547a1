#pragma once

#include <fstream>
#include <initializer_list>
#include <string>

namespace semiwave {

// full-precision round-trippable text form
std::string fmt_g17(double v);

// CSV writer with '\n' line endings and %.17g numbers, so identical inputs
// produce identical bytes on every platform.
class CsvFile {
public:
    explicit CsvFile(const std::string& path);

    void comment(const std::string& line);  // "# ..." metadata line
    void raw(const std::string& line);
    void row(std::initializer_list<double> values);

private:
    std::ofstream out_;
};

std::string read_file(const std::string& path);  // whole file, binary

}  // namespace semiwave
