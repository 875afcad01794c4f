#include "cascade/csv.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cascade/errors.hpp"

namespace cascade {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw ValidationError("Table: row width does not match the header");
    }
    rows.push_back(std::move(row));
}

int Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_value(row[i]);
        }
        out << "\n";
    }
}

void write_json(const Table& table, const std::string& path) {
    nlohmann::json j;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    std::ofstream out(path);
    if (!out) throw ValidationError("write_json: cannot open " + path);
    out << j.dump(1) << "\n";
}

Table read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("read_csv: cannot open " + path);
    Table table;
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("read_csv: empty file " + path);
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ValidationError("read_csv: bad number at line " + std::to_string(line_no));
            }
        }
        table.add_row(std::move(row));
    }
    return table;
}

CompareReport compare_tables(const Table& a, const Table& b, const std::string& stderr_column,
                             double stderr_mult) {
    if (a.columns != b.columns) {
        throw ValidationError("compare: schema mismatch (different columns)");
    }
    if (a.rows.size() != b.rows.size()) {
        throw ValidationError("compare: schema mismatch (different row counts)");
    }
    int se_col = -1;
    if (!stderr_column.empty()) {
        se_col = a.column_index(stderr_column);
        if (se_col < 0) throw ValidationError("compare: no such stderr column " + stderr_column);
    }
    CompareReport report;
    report.rows = static_cast<long>(a.rows.size());
    report.gaps.resize(a.columns.size());
    for (std::size_t c = 0; c < a.columns.size(); ++c) report.gaps[c].column = a.columns[c];
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        double allowance = 0.0;
        if (se_col >= 0) {
            allowance = stderr_mult * std::max(a.rows[r][static_cast<std::size_t>(se_col)],
                                               b.rows[r][static_cast<std::size_t>(se_col)]);
        }
        for (std::size_t c = 0; c < a.columns.size(); ++c) {
            if (se_col >= 0 && c == static_cast<std::size_t>(se_col)) continue;
            double x = a.rows[r][c];
            double y = b.rows[r][c];
            double gap = std::max(0.0, std::abs(x - y) - allowance);
            double rel = gap / std::max({std::abs(x), std::abs(y), 1e-300});
            report.gaps[c].max_abs = std::max(report.gaps[c].max_abs, gap);
            report.gaps[c].max_rel = std::max(report.gaps[c].max_rel, rel);
            report.worst_abs = std::max(report.worst_abs, gap);
            report.worst_rel = std::max(report.worst_rel, rel);
        }
    }
    return report;
}

}  // namespace cascade
