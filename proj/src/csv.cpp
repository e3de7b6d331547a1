#include "semiwave/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace semiwave {

std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvFile::CsvFile(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
}

void CsvFile::comment(const std::string& line) { out_ << "# " << line << '\n'; }

void CsvFile::raw(const std::string& line) { out_ << line << '\n'; }

void CsvFile::row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out_ << ',';
        out_ << fmt_g17(v);
        first = false;
    }
    out_ << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace semiwave
