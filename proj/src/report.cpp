#include "pgl2num/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pgl2num {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string rows_to_csv(const std::vector<CheckRow>& rows) {
    std::set<std::string> keys;
    for (const auto& r : rows)
        for (const auto& [k, _] : r.params) keys.insert(k);
    std::ostringstream out;
    out << "check_id";
    for (const auto& k : keys) out << "," << k;
    out << ",value_lhs,value_rhs,rel_discrepancy,tail_bound,verdict\n";
    for (const auto& r : rows) {
        out << r.check_id;
        for (const auto& k : keys) {
            auto it = std::find_if(r.params.begin(), r.params.end(),
                                   [&](const auto& p) { return p.first == k; });
            out << "," << (it == r.params.end() ? "" : it->second);
        }
        out << "," << format_double(r.value_lhs) << ","
            << format_double(r.value_rhs) << ","
            << format_double(r.rel_discrepancy) << ","
            << format_double(r.tail_bound) << ","
            << (r.verdict ? "pass" : "fail") << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string decay_plot_svg(const std::string& title,
                           const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           double ref_slope) {
    const int W = 520, H = 360, m = 50;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i)
        if (xs[i] > 0 && ys[i] > 0) {
            lx.push_back(std::log10(xs[i]));
            ly.push_back(std::log10(ys[i]));
        }
    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
      << H << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='10' y='20' font-size='13'>" << title << "</text>\n";
    if (lx.size() >= 2) {
        double x0 = *std::min_element(lx.begin(), lx.end());
        double x1 = *std::max_element(lx.begin(), lx.end());
        double y0 = *std::min_element(ly.begin(), ly.end());
        double y1 = *std::max_element(ly.begin(), ly.end());
        if (x1 == x0) x1 = x0 + 1;
        if (y1 == y0) y1 = y0 + 1;
        auto px = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
        auto py = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
        s << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
        for (size_t i = 0; i < lx.size(); ++i)
            s << px(lx[i]) << "," << py(ly[i]) << " ";
        s << "'/>\n";
        // reference decay line through the first point
        s << "<line stroke='gray' stroke-dasharray='4' x1='" << px(x0) << "' y1='"
          << py(ly.front()) << "' x2='" << px(x1) << "' y2='"
          << py(ly.front() + ref_slope * (x1 - x0)) << "'/>\n";
        for (size_t i = 0; i < lx.size(); ++i)
            s << "<circle cx='" << px(lx[i]) << "' cy='" << py(ly[i])
              << "' r='2.5' fill='crimson'/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace pgl2num
