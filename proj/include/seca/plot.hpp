#pragma once

// Minimal deterministic SVG line charts with optional error bars.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace seca::plot {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> err;  // empty or same length as y
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    bool log_y = false;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline std::string escape(const std::string& s) {
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

}  // namespace detail

inline std::string render_svg(const Chart& chart) {
    constexpr double width = 640.0;
    constexpr double height = 420.0;
    constexpr double left = 70.0;
    constexpr double right = 150.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#7f7f7f", "#2ca02c", "#d62728", "#9467bd"};

    auto ty = [&](double v) { return chart.log_y ? std::log10(std::max(v, 1e-300)) : v; };

    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = x0;
    double y1 = -x0;
    for (const auto& s : chart.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double e = s.err.empty() ? 0.0 : s.err[i];
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            const double lo = chart.log_y ? s.y[i] : s.y[i] - e;
            y0 = std::min(y0, ty(lo));
            y1 = std::max(y1, ty(s.y[i] + e));
        }
    }
    if (!(x1 > x0)) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (!(y1 > y0)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
    auto py = [&](double v) { return top + (1.0 - (ty(v) - y0) / (y1 - y0)) * ph; };
    auto py_raw = [&](double t) { return top + (1.0 - (t - y0) / (y1 - y0)) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) + "\" height=\"" +
           detail::fmt(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + detail::fmt(width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
           detail::escape(chart.title) + "</text>\n";
    svg += "<rect x=\"" + detail::fmt(left) + "\" y=\"" + detail::fmt(top) + "\" width=\"" + detail::fmt(pw) +
           "\" height=\"" + detail::fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0;
        const double yt = y0 + (y1 - y0) * k / 4.0;
        svg += "<text x=\"" + detail::fmt(px(xv)) + "\" y=\"" + detail::fmt(height - bottom + 16) +
               "\" text-anchor=\"middle\">" + detail::tick(xv) + "</text>\n";
        svg += "<text x=\"" + detail::fmt(left - 6) + "\" y=\"" + detail::fmt(py_raw(yt) + 4) +
               "\" text-anchor=\"end\">" + detail::tick(chart.log_y ? std::pow(10.0, yt) : yt) + "</text>\n";
    }
    svg += "<text x=\"" + detail::fmt(left + pw / 2) + "\" y=\"" + detail::fmt(height - 12) +
           "\" text-anchor=\"middle\">" + detail::escape(chart.x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + detail::fmt(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           detail::fmt(top + ph / 2) + ")\">" + detail::escape(chart.y_label) + (chart.log_y ? " (log)" : "") +
           "</text>\n";

    for (std::size_t si = 0; si < chart.series.size(); ++si) {
        const auto& s = chart.series[si];
        const std::string color = palette[si % (sizeof palette / sizeof *palette)];
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) points += ' ';
            points += detail::fmt(px(s.x[i])) + "," + detail::fmt(py(s.y[i]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            svg += "<circle cx=\"" + detail::fmt(px(s.x[i])) + "\" cy=\"" + detail::fmt(py(s.y[i])) +
                   "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
            if (!s.err.empty() && s.err[i] > 0.0) {
                const double lo = chart.log_y ? s.y[i] : s.y[i] - s.err[i];
                svg += "<line x1=\"" + detail::fmt(px(s.x[i])) + "\" y1=\"" + detail::fmt(py(lo)) + "\" x2=\"" +
                       detail::fmt(px(s.x[i])) + "\" y2=\"" + detail::fmt(py(s.y[i] + s.err[i])) +
                       "\" stroke=\"" + color + "\"/>\n";
            }
        }
        const double ly = top + 14.0 + 18.0 * static_cast<double>(si);
        svg += "<line x1=\"" + detail::fmt(width - right + 12) + "\" y1=\"" + detail::fmt(ly) + "\" x2=\"" +
               detail::fmt(width - right + 32) + "\" y2=\"" + detail::fmt(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::fmt(width - right + 38) + "\" y=\"" + detail::fmt(ly + 4) + "\">" +
               detail::escape(s.name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace seca::plot
