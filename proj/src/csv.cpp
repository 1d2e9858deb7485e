#include "mildflow/csv.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include "mildflow/errors.hpp"

namespace mildflow {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw ValidationError("CSV row width does not match header");
    rows_.push_back(std::move(row));
}

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

}  // namespace

void CsvTable::write(std::ostream& os, bool timestamp) const {
    if (timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        os << "# generated " << buf << '\n';
    }
    write_line(os, header_);
    for (const auto& r : rows_) write_line(os, r);
}

void emit_csv(const CsvTable& table, const std::string& path, bool timestamp) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    table.write(out, timestamp);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace mildflow
