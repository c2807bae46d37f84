#include "brakemc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace brakemc {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 48.0;

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

/// Linear map from data to pixel coordinates.
struct Scale {
    double lo = 0.0;
    double hi = 1.0;
    double px_lo = 0.0;
    double px_hi = 1.0;

    double operator()(double v) const {
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

double nice_step(double span, int target_ticks) {
    const double raw = span / std::max(1, target_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= mult * mag) {
            return mult * mag;
        }
    }
    return 10.0 * mag;
}

void append_axes(std::string& out, const Scale& x, const Scale& y,
                 const std::string& x_label, const std::string& y_label) {
    out += "<line x1=\"" + num(x.px_lo) + "\" y1=\"" + num(y.px_lo) + "\" x2=\"" +
           num(x.px_hi) + "\" y2=\"" + num(y.px_lo) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(x.px_lo) + "\" y1=\"" + num(y.px_lo) + "\" x2=\"" +
           num(x.px_lo) + "\" y2=\"" + num(y.px_hi) + "\" stroke=\"black\"/>\n";

    const double x_step = nice_step(x.hi - x.lo, 7);
    for (double v = std::ceil(x.lo / x_step) * x_step; v <= x.hi + 1e-9; v += x_step) {
        const double px = x(v);
        out += "<line x1=\"" + num(px) + "\" y1=\"" + num(y.px_lo) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(y.px_lo + 5.0) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(px) + "\" y=\"" + num(y.px_lo + 18.0) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + label(v) + "</text>\n";
    }
    const double y_step = nice_step(y.hi - y.lo, 6);
    for (double v = std::ceil(y.lo / y_step) * y_step; v <= y.hi + 1e-9; v += y_step) {
        const double py = y(v);
        out += "<line x1=\"" + num(x.px_lo - 5.0) + "\" y1=\"" + num(py) + "\" x2=\"" +
               num(x.px_lo) + "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x.px_lo - 8.0) + "\" y=\"" + num(py + 4.0) +
               "\" font-size=\"11\" text-anchor=\"end\">" + label(v) + "</text>\n";
    }

    out += "<text x=\"" + num(0.5 * (x.px_lo + x.px_hi)) + "\" y=\"" +
           num(kHeight - 10.0) + "\" font-size=\"12\" text-anchor=\"middle\">" + x_label +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + num(0.5 * (y.px_lo + y.px_hi)) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(0.5 * (y.px_lo + y.px_hi)) + ")\">" + y_label + "</text>\n";
}

std::string svg_open(const std::string& title) {
    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + label(kWidth) +
        "\" height=\"" + label(kHeight) + "\" viewBox=\"0 0 " + label(kWidth) + " " +
        label(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2.0) +
           "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">" + title + "</text>\n";
    return out;
}

} // namespace

std::string histogram_svg(const DistributionSummary& summary, const std::string& title) {
    const Histogram& hist = summary.histogram;
    std::uint64_t peak = 1;
    for (std::uint64_t c : hist.counts) {
        peak = std::max(peak, c);
    }

    const Scale x{hist.origin,
                  hist.origin + hist.bin_width * static_cast<double>(hist.counts.size()),
                  kMarginLeft, kWidth - kMarginRight};
    const Scale y{0.0, static_cast<double>(peak) * 1.05, kHeight - kMarginBottom,
                  kMarginTop};

    std::string out = svg_open(title);
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        const double left = hist.origin + hist.bin_width * static_cast<double>(i);
        const double x0 = x(left);
        const double x1 = x(left + hist.bin_width);
        const double y1 = y(static_cast<double>(hist.counts[i]));
        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" +
               num(x1 - x0) + "\" height=\"" + num(y(0.0) - y1) +
               "\" fill=\"#4477aa\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
    }
    // Mean marker.
    out += "<line x1=\"" + num(x(summary.mean)) + "\" y1=\"" + num(y.px_lo) +
           "\" x2=\"" + num(x(summary.mean)) + "\" y2=\"" + num(y.px_hi) +
           "\" stroke=\"#cc3311\" stroke-dasharray=\"5,3\"/>\n";
    out += "<text x=\"" + num(x(summary.mean) + 4.0) + "\" y=\"" + num(y.px_hi + 12.0) +
           "\" font-size=\"11\" fill=\"#cc3311\">mean " + label(summary.mean) +
           " m</text>\n";
    append_axes(out, x, y, "stopping distance (m)", "count");
    out += "</svg>\n";
    return out;
}

std::string risk_curve_svg(const RiskCurve& curve, const std::string& title) {
    if (curve.headways_m.empty()) {
        return svg_open(title) + "</svg>\n";
    }
    const Scale x{curve.headways_m.front(), curve.headways_m.back(), kMarginLeft,
                  kWidth - kMarginRight};
    const Scale y{0.0, 1.0, kHeight - kMarginBottom, kMarginTop};

    std::string out = svg_open(title);

    // Dashed risk levels with threshold-headway annotations.
    for (const RiskThreshold& t : curve.thresholds) {
        const double py = y(t.risk);
        out += "<line x1=\"" + num(x.px_lo) + "\" y1=\"" + num(py) + "\" x2=\"" +
               num(x.px_hi) + "\" y2=\"" + num(py) +
               "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
        if (std::isfinite(t.headway_m)) {
            const double px = x(std::clamp(t.headway_m, x.lo, x.hi));
            out += "<line x1=\"" + num(px) + "\" y1=\"" + num(y.px_lo) + "\" x2=\"" +
                   num(px) + "\" y2=\"" + num(py) +
                   "\" stroke=\"#888888\" stroke-dasharray=\"2,3\"/>\n";
            out += "<text x=\"" + num(px + 4.0) + "\" y=\"" + num(py - 4.0) +
                   "\" font-size=\"11\" fill=\"#222222\">" + label(t.risk * 100.0) +
                   "% at " + label(t.headway_m) + " m</text>\n";
        }
    }

    std::string points;
    for (std::size_t i = 0; i < curve.headways_m.size(); ++i) {
        if (!points.empty()) {
            points += ' ';
        }
        points += num(x(curve.headways_m[i])) + "," + num(y(curve.probabilities[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"#4477aa\" stroke-width=\"1.5\" points=\"" +
           points + "\"/>\n";

    append_axes(out, x, y, "initial headway (m)", "P(collision)");
    out += "</svg>\n";
    return out;
}

} // namespace brakemc
