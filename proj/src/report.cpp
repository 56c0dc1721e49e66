#include "bai/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace bai {

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
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

// Pixel coordinates with fixed precision keep the file deterministic.
std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct PlotArea {
    double left = 70.0;
    double top = 46.0;
    double width = 660.0;
    double height = 500.0;
    double x_max = 1.0;
    double y_max = 1.0;

    double x(double round) const { return left + width * (round / x_max); }
    double y(double value) const {
        return top + height * (1.0 - value / y_max);
    }
};

void draw_axes(std::string& svg, const PlotArea& plot) {
    const double right = plot.left + plot.width;
    const double bottom = plot.top + plot.height;
    svg += "<line x1=\"" + px(plot.left) + "\" y1=\"" + px(bottom) +
           "\" x2=\"" + px(right) + "\" y2=\"" + px(bottom) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + px(plot.left) + "\" y1=\"" + px(plot.top) +
           "\" x2=\"" + px(plot.left) + "\" y2=\"" + px(bottom) +
           "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = plot.x_max * static_cast<double>(i) / ticks;
        const double cx = plot.x(fx);
        svg += "<line x1=\"" + px(cx) + "\" y1=\"" + px(bottom) + "\" x2=\"" +
               px(cx) + "\" y2=\"" + px(bottom + 5.0) +
               "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        char label[32];
        std::snprintf(label, sizeof label, "%.0f", fx);
        svg += "<text x=\"" + px(cx) + "\" y=\"" + px(bottom + 20.0) +
               "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333333\">" +
               label + "</text>\n";

        const double fy = plot.y_max * static_cast<double>(i) / ticks;
        const double cy = plot.y(fy);
        svg += "<line x1=\"" + px(plot.left - 5.0) + "\" y1=\"" + px(cy) +
               "\" x2=\"" + px(plot.left) + "\" y2=\"" + px(cy) +
               "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        std::snprintf(label, sizeof label, "%.4g", fy);
        svg += "<text x=\"" + px(plot.left - 9.0) + "\" y=\"" + px(cy + 4.0) +
               "\" font-size=\"12\" text-anchor=\"end\" fill=\"#333333\">" +
               label + "</text>\n";
    }
    const double bx = plot.left + plot.width / 2.0;
    svg += "<text x=\"" + px(bx) + "\" y=\"" + px(bottom + 42.0) +
           "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#333333\">"
           "arm pulls</text>\n";
    const double ly = plot.top + plot.height / 2.0;
    svg += "<text x=\"18\" y=\"" + px(ly) +
           "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#333333\" "
           "transform=\"rotate(-90 18 " +
           px(ly) + ")\">mean simple regret</text>\n";
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

std::string slugify(std::string_view label) {
    std::string out;
    out.reserve(label.size());
    for (char c : label) {
        if (c >= 'a' && c <= 'z') {
            out += c;
        } else if (c >= 'A' && c <= 'Z') {
            out += static_cast<char>(c - 'A' + 'a');
        } else if (c >= '0' && c <= '9') {
            out += c;
        } else if (!out.empty() && out.back() != '_') {
            out += '_';
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    if (out.empty()) out = "policy";
    return out;
}

std::string curve_csv(const AggregateCurve& curve) {
    std::string out = "round,mean_regret,std_regret,mean_error,std_error\n";
    for (const AggregatePoint& p : curve.points) {
        out += std::to_string(p.round);
        out += ',';
        out += format_number(p.mean_regret);
        out += ',';
        out += format_number(p.std_regret);
        out += ',';
        out += format_number(p.mean_error);
        out += ',';
        out += format_number(p.std_error);
        out += '\n';
    }
    return out;
}

std::string aggregate_csv(const std::vector<AggregateCurve>& curves) {
    std::string out = "policy,round,mean_regret,std_regret,mean_error,std_error\n";
    for (const AggregateCurve& curve : curves) {
        std::string label = curve.policy_label;
        if (label.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : label) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            quoted += '"';
            label = quoted;
        }
        for (const AggregatePoint& p : curve.points) {
            out += label;
            out += ',';
            out += std::to_string(p.round);
            out += ',';
            out += format_number(p.mean_regret);
            out += ',';
            out += format_number(p.std_regret);
            out += ',';
            out += format_number(p.mean_error);
            out += ',';
            out += format_number(p.std_error);
            out += '\n';
        }
    }
    return out;
}

std::string render_regret_svg(const std::vector<ChartSeries>& series,
                              std::int64_t x_max, const std::string& title) {
    if (series.empty()) {
        throw std::invalid_argument("render_regret_svg: no series");
    }
    if (x_max < 1) {
        throw std::invalid_argument("render_regret_svg: x_max must be >= 1");
    }
    PlotArea plot;
    plot.x_max = static_cast<double>(x_max);
    double peak = 0.0;
    for (const ChartSeries& s : series) {
        for (const AggregatePoint& p : s.curve.points) {
            peak = std::max(peak, p.mean_regret + p.std_regret);
        }
    }
    if (peak <= 0.0) peak = 1e-3;
    plot.y_max = peak * 1.08;

    const double svg_w = plot.left + plot.width + 230.0;
    const double svg_h = plot.top + plot.height + 64.0;
    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(svg_w) +
           "\" height=\"" + px(svg_h) + "\" viewBox=\"0 0 " + px(svg_w) + " " +
           px(svg_h) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + px(svg_w) + "\" height=\"" +
           px(svg_h) + "\" fill=\"#ffffff\"/>\n";
    if (!title.empty()) {
        svg += "<text x=\"" + px(plot.left + plot.width / 2.0) +
               "\" y=\"24\" font-size=\"16\" text-anchor=\"middle\" "
               "fill=\"#111111\">" +
               xml_escape(title) + "</text>\n";
    }
    draw_axes(svg, plot);

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        const auto& points = series[i].curve.points;
        if (points.empty()) continue;
        // Band polygon: upper edge forward, lower edge back.
        std::string band;
        for (const AggregatePoint& p : points) {
            const double hi =
                std::min(plot.y_max, p.mean_regret + p.std_regret);
            band += px(plot.x(static_cast<double>(p.round))) + "," +
                    px(plot.y(hi)) + " ";
        }
        for (auto it = points.rbegin(); it != points.rend(); ++it) {
            const double lo = std::max(0.0, it->mean_regret - it->std_regret);
            band += px(plot.x(static_cast<double>(it->round))) + "," +
                    px(plot.y(lo)) + " ";
        }
        band.pop_back();
        svg += "<polygon points=\"" + band + "\" fill=\"" + color +
               "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";

        std::string line;
        for (const AggregatePoint& p : points) {
            line += px(plot.x(static_cast<double>(p.round))) + "," +
                    px(plot.y(std::min(plot.y_max, p.mean_regret))) + " ";
        }
        line.pop_back();
        svg += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" +
               color + "\" stroke-width=\"1.5\"/>\n";
    }

    const double lx = plot.left + plot.width + 18.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        const double ly = plot.top + 10.0 + 20.0 * static_cast<double>(i);
        svg += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" +
               px(lx + 22.0) + "\" y2=\"" + px(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + px(lx + 28.0) + "\" y=\"" + px(ly + 4.0) +
               "\" font-size=\"12\" fill=\"#333333\">" +
               xml_escape(series[i].label) + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace bai
