// Deterministic CSV/JSON/SVG emission for verification runs.
#pragma once

#include <map>
#include <string>
#include <vector>

namespace pgl2num {

// One verdict row: {check_id, params..., value_lhs, value_rhs,
// rel_discrepancy, tail_bound, verdict}.
struct CheckRow {
    std::string check_id;
    std::vector<std::pair<std::string, std::string>> params;
    double value_lhs = 0.0;
    double value_rhs = 0.0;
    double rel_discrepancy = 0.0;
    double tail_bound = 0.0;
    bool verdict = false;
};

std::string format_double(double v);

// Stable column order: check_id, sorted param keys, fixed value columns.
std::string rows_to_csv(const std::vector<CheckRow>& rows);

void write_file(const std::string& path, const std::string& content);

// Minimal log-log decay plot (polyline + reference slope), diagnostic only.
std::string decay_plot_svg(const std::string& title,
                           const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           double ref_slope);

}  // namespace pgl2num
