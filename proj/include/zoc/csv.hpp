#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "zoc/errors.hpp"

namespace zoc {

//! Renders a double with 9 significant digits, the project-wide CSV format.
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

//! The double nearest to the 9-significant-digit rendering; CSV and JSON
//! serializers share it so both formats encode identical numeric values.
inline double round_to_output(double x) {
    return std::strtod(format_number(x).c_str(), nullptr);
}

//! Rectangular numeric table with a stable header.
struct csv_table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row) {
        if (row.size() != header.size())
            throw dimension_mismatch("csv_table: row width does not match header");
        rows.push_back(std::move(row));
    }

    //! Comma separator, '.' decimal point, LF line endings.
    std::string to_csv() const {
        std::string out;
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out += ',';
            out += header[j];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j) out += ',';
                out += format_number(row[j]);
            }
            out += '\n';
        }
        return out;
    }
};

} // namespace zoc
