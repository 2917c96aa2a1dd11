#include "cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace censorlab::cli {
namespace {

std::string printf_double(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

std::string cell_text(const Record& v, bool machine) {
    if (v.is_null()) return machine ? "" : "-";
    if (v.is_number_float()) {
        return machine ? format_number(v.get<double>()) : printf_double("%.10g", v.get<double>());
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void write_table(std::ostream& os, const std::vector<Record>& rows, bool force_array) {
    if (rows.empty()) return;
    if (rows.size() == 1 && !force_array) {
        std::size_t width = 0;
        for (const auto& [key, _] : rows.front().items()) width = std::max(width, key.size());
        for (const auto& [key, value] : rows.front().items()) {
            os << key << std::string(width - key.size() + 2, ' ') << cell_text(value, false)
               << '\n';
        }
        return;
    }
    std::vector<std::string> keys;
    for (const auto& [key, _] : rows.front().items()) keys.push_back(key);
    std::vector<std::size_t> width(keys.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t c = 0; c < keys.size(); ++c) width[c] = keys[c].size();
    for (const auto& row : rows) {
        auto& line = cells.emplace_back();
        for (std::size_t c = 0; c < keys.size(); ++c) {
            line.push_back(row.contains(keys[c]) ? cell_text(row[keys[c]], false) : "-");
            width[c] = std::max(width[c], line.back().size());
        }
    }
    auto put = [&](const std::vector<std::string>& line) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (c) os << "  ";
            os << std::string(width[c] - line[c].size(), ' ') << line[c];
        }
        os << '\n';
    };
    put(keys);
    for (const auto& line : cells) put(line);
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return printf_double("%.17g", value);
}

Record number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return value;
}

void write_csv(std::ostream& os, const std::vector<Record>& rows) {
    if (rows.empty()) return;
    std::vector<std::string> keys;
    for (const auto& [key, _] : rows.front().items()) keys.push_back(key);
    for (std::size_t c = 0; c < keys.size(); ++c) os << (c ? "," : "") << keys[c];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < keys.size(); ++c) {
            if (c) os << ',';
            if (row.contains(keys[c])) os << cell_text(row[keys[c]], true);
        }
        os << '\n';
    }
}

void emit(std::ostream& os, Format format, const std::vector<Record>& rows, bool force_array) {
    switch (format) {
        case Format::Json: {
            if (rows.size() == 1 && !force_array) {
                os << rows.front().dump(2) << '\n';
            } else {
                Record arr = Record::array();
                for (const auto& r : rows) arr.push_back(r);
                os << arr.dump(2) << '\n';
            }
            break;
        }
        case Format::Csv: write_csv(os, rows); break;
        case Format::Table: write_table(os, rows, force_array); break;
    }
}

}  // namespace censorlab::cli
