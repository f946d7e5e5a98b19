#pragma once

#include <string>
#include <vector>

namespace fracbern {

/// 17 significant digits, `.` decimal separator; round-trips any double.
std::string format_number(double v);

/// RFC 4180 table: header row, then one row per record, CRLF-free (\n).
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Self-contained 800x600 SVG line chart with linear axes and tick labels.
std::string render_svg(const PlotSpec& plot);

/// Writes `content` to `path`; throws std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fracbern
