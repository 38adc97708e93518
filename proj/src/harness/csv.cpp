#include "crn/harness/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace crn::harness {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    buf_ += "# ";
    buf_ += key;
    buf_ += " = ";
    buf_ += value;
    buf_ += '\n';
}

void CsvWriter::meta(const std::string& key, double value) { meta(key, fmt_double(value)); }

void CsvWriter::meta(const std::string& key, long long value) {
    meta(key, std::to_string(value));
}

void CsvWriter::header(const std::vector<std::string>& columns) { row_text(columns); }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0)
            buf_ += ',';
        buf_ += fmt_double(values[i]);
    }
    buf_ += '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0)
            buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("csv: cannot open " + path + " for writing");
    out << buf_;
    if (!out)
        throw std::runtime_error("csv: short write to " + path);
}

} // namespace crn::harness
