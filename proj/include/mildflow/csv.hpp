#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mildflow {

/// 17 significant digits, scientific notation ("inf"/"nan" spelled out).
std::string format_number(double v);

/// A header plus string rows; numbers go through format_number.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

    /// Row width must match the header.
    void add_row(std::vector<std::string> row);

    /// Optional "# generated <UTC time>" first line, then header and rows.
    void write(std::ostream& os, bool timestamp) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes the table to `path`; throws IoError if the file cannot be written.
void emit_csv(const CsvTable& table, const std::string& path, bool timestamp);

}  // namespace mildflow
