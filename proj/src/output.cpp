#include "fracbern/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fracbern {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double m = r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0;
    return m * mag;
}

struct Axis {
    double lo, hi, step;
};

Axis make_axis(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = std::max(std::abs(lo) * 0.1, 1.0);
        lo -= pad;
        hi += pad;
    }
    const double step = nice_step(hi - lo, 6);
    return Axis{std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += quote_csv(cells[i]);
        }
        out += '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
}

std::string render_svg(const PlotSpec& plot) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    }
    if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    const Axis ax = make_axis(xlo, xhi);
    const Axis ay = make_axis(ylo, yhi);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto sy = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    o << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    o << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">"
      << escape_xml(plot.title) << "</text>\n";
    o << "<g stroke=\"black\" stroke-width=\"1\">\n";
    o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(kLeft + pw) << "\" y2=\""
      << px(kTop + ph) << "\"/>\n";
    o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft) << "\" y2=\""
      << px(kTop + ph) << "\"/>\n";
    o << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int i = 0;; ++i) {
        const double v = ax.lo + i * ax.step;
        if (v > ax.hi + 1e-9 * ax.step) break;
        o << "<line x1=\"" << px(sx(v)) << "\" y1=\"" << px(kTop + ph) << "\" x2=\"" << px(sx(v)) << "\" y2=\""
          << px(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << px(sx(v)) << "\" y=\"" << px(kTop + ph + 20) << "\" text-anchor=\"middle\">"
          << tick_label(v) << "</text>\n";
    }
    for (int i = 0;; ++i) {
        const double v = ay.lo + i * ay.step;
        if (v > ay.hi + 1e-9 * ay.step) break;
        o << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(sy(v)) << "\" x2=\"" << px(kLeft) << "\" y2=\""
          << px(sy(v)) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(v) + 4) << "\" text-anchor=\"end\">"
          << tick_label(v) << "</text>\n";
    }
    o << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\"" << px(kHeight - 15)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(plot.x_label) << "</text>\n";
    o << "<text x=\"20\" y=\"" << px(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
      << px(kTop + ph / 2) << ")\">" << escape_xml(plot.y_label) << "</text>\n";
    o << "</g>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const PlotSeries& s = plot.series[k];
        const char* color = kColors[k % (sizeof kColors / sizeof *kColors)];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            o << px(sx(s.x[i])) << ',' << px(sy(s.y[i])) << ' ';
        }
        o << "\"/>\n";
        const double ly = kTop + 15 + 18 * static_cast<double>(k);
        o << "<line x1=\"" << px(kLeft + pw - 150) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(kLeft + pw - 125)
          << "\" y2=\"" << px(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << px(kLeft + pw - 118) << "\" y=\"" << px(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace fracbern
