#include "hypertopo/csv.hpp"

#include <charconv>
#include <cmath>

namespace hypertopo {

std::string format_number(double value) {
    if (std::isnan(value)) return "";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

CsvWriter& CsvWriter::field(std::string_view value) {
    if (!first_) out_ << ',';
    first_ = false;
    if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
        out_ << value;
        return *this;
    }
    out_ << '"';
    for (char c : value) {
        if (c == '"') out_ << '"';
        out_ << c;
    }
    out_ << '"';
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    first_ = true;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (const auto& f : fields) field(f);
    end_row();
}

}  // namespace hypertopo
