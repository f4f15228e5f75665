#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace hypertopo {

/// Shortest decimal form that round-trips; "" for NaN, "inf"/"-inf" for
/// infinities.
std::string format_number(double value);

/// RFC 4180 writer: comma separated, CRLF-free ('\n') rows, fields quoted
/// only when they contain a comma, quote or newline.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& field(std::string_view value);
    CsvWriter& field(double value) { return field(format_number(value)); }
    CsvWriter& field(std::uint64_t value) { return field(std::to_string(value)); }
    CsvWriter& field(std::int64_t value) { return field(std::to_string(value)); }
    CsvWriter& field(std::uint32_t value) { return field(std::uint64_t{value}); }
    CsvWriter& field(int value) { return field(std::int64_t{value}); }
    CsvWriter& field(const char* value) { return field(std::string_view(value)); }
    CsvWriter& field(const std::string& value) { return field(std::string_view(value)); }
    void end_row();

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
    bool first_ = true;
};

}  // namespace hypertopo
