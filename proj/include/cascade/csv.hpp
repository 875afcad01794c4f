#pragma once

#include <string>
#include <vector>

namespace cascade {

/// Flat numeric table with named columns; the interchange unit for every
/// subcommand. CSV round-trips exactly (17 significant digits).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    int column_index(const std::string& name) const;  // -1 if absent
};

void write_csv(const Table& table, const std::string& path);
void write_json(const Table& table, const std::string& path);
Table read_csv(const std::string& path);

struct ColumnGap {
    std::string column;
    double max_abs = 0.0;
    double max_rel = 0.0;
};

struct CompareReport {
    std::vector<ColumnGap> gaps;
    double worst_abs = 0.0;
    double worst_rel = 0.0;
    long rows = 0;
};

/// Column-wise maximum gaps between two tables of identical schema. A
/// stderr-aware mode (for Monte Carlo outputs) widens the per-row allowance
/// by stderr_mult times the named stderr column before recording a gap.
CompareReport compare_tables(const Table& a, const Table& b,
                             const std::string& stderr_column = "",
                             double stderr_mult = 0.0);

}  // namespace cascade
