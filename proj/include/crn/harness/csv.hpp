#pragma once

#include <string>
#include <vector>

namespace crn::harness {

/// Formats a double with enough digits to round-trip typical values and
/// stay byte-stable across runs.
std::string fmt_double(double v);

/// CSV document with a '#'-prefixed metadata block, one header row, and
/// data rows. Content is accumulated in memory and written atomically so
/// identical inputs give byte-identical files.
class CsvWriter {
public:
    void meta(const std::string& key, const std::string& value);
    void meta(const std::string& key, double value);
    void meta(const std::string& key, long long value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row_text(const std::vector<std::string>& cells);

    [[nodiscard]] const std::string& str() const { return buf_; }
    void write(const std::string& path) const;

private:
    std::string buf_;
};

} // namespace crn::harness
