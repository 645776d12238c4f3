#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

// Minimal deterministic SVG charts: one bar chart and a grid of line panels.
namespace sentiscope::svg {

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
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

inline std::string text(double x, double y, const std::string& s, const char* anchor = "middle",
                        int size = 11, const char* extra = "") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
           "\" text-anchor=\"" + anchor + "\"" + extra + ">" + escape(s) + "</text>\n";
}

inline std::string line(double x1, double y1, double x2, double y2, const char* style) {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" " + style + "/>\n";
}

inline std::string header(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\" font-family=\"sans-serif\">\n"
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// Nice symmetric-ish axis range covering [lo, hi] and 0.
inline std::pair<double, double> axis_range(double lo, double hi) {
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
    if (hi - lo < 1e-9) hi = lo + 1.0;
    auto up = [](double v) { return std::ceil(v * 10.0 - 1e-9) / 10.0; };
    auto down = [](double v) { return std::floor(v * 10.0 + 1e-9) / 10.0; };
    return {down(lo), up(hi)};
}

}  // namespace detail

struct Bar {
    std::string label;
    std::optional<double> value;  // empty draws nothing
};

/// Vertical bar chart with labels rotated under each bar.
[[nodiscard]] inline std::string bar_chart(const std::string& title, const std::string& y_label,
                                           const std::vector<Bar>& bars) {
    const double left = 60, right = 20, top = 40, bottom = 130;
    const double slot = 36;
    const double plot_w = std::max(200.0, slot * static_cast<double>(bars.size()));
    const double plot_h = 260;
    const double w = left + plot_w + right;
    const double h = top + plot_h + bottom;

    double lo = 0.0, hi = 0.0;
    for (const auto& b : bars) {
        if (b.value) lo = std::min(lo, *b.value), hi = std::max(hi, *b.value);
    }
    const auto [ymin, ymax] = detail::axis_range(lo, hi);
    auto y_of = [&](double v) { return top + plot_h * (ymax - v) / (ymax - ymin); };

    std::string out = detail::header(w, h);
    out += detail::text(w / 2, 22, title, "middle", 14);
    for (int k = 0; k <= 10; ++k) {
        const double v = ymin + (ymax - ymin) * k / 10.0;
        out += detail::line(left, y_of(v), left + plot_w, y_of(v), "stroke=\"#e5e5e5\"");
        out += detail::text(left - 6, y_of(v) + 4, detail::num(v), "end", 10);
    }
    out += detail::line(left, y_of(0), left + plot_w, y_of(0), "stroke=\"black\"");
    out += detail::line(left, top, left, top + plot_h, "stroke=\"black\"");
    out += detail::text(16, top + plot_h / 2, y_label, "middle", 11,
                        (" transform=\"rotate(-90 16 " + detail::num(top + plot_h / 2) + ")\"").c_str());
    const double step = plot_w / std::max<std::size_t>(bars.size(), 1);
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double x = left + step * static_cast<double>(i);
        const double cx = x + step / 2;
        if (bars[i].value) {
            const double v = *bars[i].value;
            const double y0 = y_of(std::max(v, 0.0));
            const double y1 = y_of(std::min(v, 0.0));
            out += "<rect x=\"" + detail::num(x + step * 0.15) + "\" y=\"" + detail::num(y0) + "\" width=\"" +
                   detail::num(step * 0.7) + "\" height=\"" + detail::num(y1 - y0) + "\" fill=\"#4c72b0\"/>\n";
            out += detail::text(cx, y0 - 3, detail::num(v), "middle", 9);
        }
        const double ly = top + plot_h + 10;
        out += detail::text(cx, ly, bars[i].label, "end", 10,
                            (" transform=\"rotate(-60 " + detail::num(cx) + " " + detail::num(ly) + ")\"").c_str());
    }
    out += "</svg>\n";
    return out;
}

struct LinePanel {
    std::string title;
    std::vector<double> x;
    std::vector<std::optional<double>> y;  // gaps break the line
};

/// Grid of line panels sharing one x label; each panel scales its own y axis.
[[nodiscard]] inline std::string line_panels(const std::string& title, const std::string& x_label,
                                             const std::string& y_label, const std::vector<LinePanel>& panels,
                                             int columns = 2) {
    const double pw = 320, ph = 220, margin_l = 55, margin_t = 50, gap_x = 40, gap_y = 70;
    columns = std::max(1, std::min<int>(columns, static_cast<int>(panels.size())));
    const int rows = static_cast<int>((panels.size() + columns - 1) / columns);
    const double w = margin_l + columns * (pw + gap_x);
    const double h = margin_t + rows * (ph + gap_y);

    std::string out = detail::header(w, h);
    out += detail::text(w / 2, 22, title, "middle", 14);
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        const double ox = margin_l + static_cast<double>(p % columns) * (pw + gap_x);
        const double oy = margin_t + static_cast<double>(p / columns) * (ph + gap_y);
        double xmin = 0, xmax = 1, lo = 0, hi = 0;
        if (!panel.x.empty()) {
            xmin = *std::min_element(panel.x.begin(), panel.x.end());
            xmax = *std::max_element(panel.x.begin(), panel.x.end());
            if (xmax == xmin) xmax = xmin + 1;
        }
        for (const auto& v : panel.y) {
            if (v) lo = std::min(lo, *v), hi = std::max(hi, *v);
        }
        const auto [ymin, ymax] = detail::axis_range(lo, hi);
        auto px = [&](double v) { return ox + pw * (v - xmin) / (xmax - xmin); };
        auto py = [&](double v) { return oy + ph * (ymax - v) / (ymax - ymin); };

        out += detail::text(ox + pw / 2, oy - 8, panel.title, "middle", 12);
        out += "<rect x=\"" + detail::num(ox) + "\" y=\"" + detail::num(oy) + "\" width=\"" + detail::num(pw) +
               "\" height=\"" + detail::num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int k = 0; k <= 4; ++k) {
            const double v = ymin + (ymax - ymin) * k / 4.0;
            out += detail::line(ox, py(v), ox + pw, py(v), "stroke=\"#e5e5e5\"");
            out += detail::text(ox - 5, py(v) + 4, detail::num(v), "end", 9);
        }
        out += detail::line(ox, py(0), ox + pw, py(0), "stroke=\"#999\"");
        for (double xv : panel.x) {
            out += detail::text(px(xv), oy + ph + 14, detail::tick(xv), "middle", 9);
        }
        out += detail::text(ox + pw / 2, oy + ph + 32, x_label, "middle", 10);
        out += detail::text(ox - 40, oy + ph / 2, y_label, "middle", 10,
                            (" transform=\"rotate(-90 " + detail::num(ox - 40) + " " + detail::num(oy + ph / 2) + ")\"").c_str());

        std::string path;
        for (std::size_t i = 0; i < panel.x.size() && i < panel.y.size(); ++i) {
            if (!panel.y[i]) {
                if (!path.empty()) out += "<polyline fill=\"none\" stroke=\"#c44e52\" stroke-width=\"2\" points=\"" + path + "\"/>\n";
                path.clear();
                continue;
            }
            if (!path.empty()) path += ' ';
            path += detail::num(px(panel.x[i])) + "," + detail::num(py(*panel.y[i]));
            out += "<circle cx=\"" + detail::num(px(panel.x[i])) + "\" cy=\"" + detail::num(py(*panel.y[i])) +
                   "\" r=\"2.5\" fill=\"#c44e52\"/>\n";
        }
        if (!path.empty()) out += "<polyline fill=\"none\" stroke=\"#c44e52\" stroke-width=\"2\" points=\"" + path + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace sentiscope::svg
