#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace wflow::cli {

struct ChamberPanel {
    std::string title;
    std::vector<double> masses;
    std::vector<double> heights;  // one per cycle vertex
    std::vector<int> eps;         // arrow i -> i+1 when +1, i+1 -> i when -1
};

namespace svgdetail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace svgdetail

/// Self-contained SVG: one panel per chamber, cycle vertices spread on a
/// horizontal axis with vertical position equal to the weight label; solid
/// edges carry weight gap 1, dashed edges a different gap (drifting punctures).
inline std::string chamber_diagram_svg(const std::vector<ChamberPanel>& panels) {
    using svgdetail::num;
    const double pw = 300, ph = 280, margin = 40;
    double W = pw * panels.size(), H = ph;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" + num(H) +
         "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    s += "<defs><marker id=\"arr\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
         "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">"
         "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#333\"/></marker></defs>\n";
    s += "<rect width=\"" + num(W) + "\" height=\"" + num(H) + "\" fill=\"white\"/>\n";

    for (size_t p = 0; p < panels.size(); ++p) {
        const ChamberPanel& cp = panels[p];
        int n = static_cast<int>(cp.heights.size());
        double hmin = cp.heights[0], hmax = cp.heights[0];
        for (double h : cp.heights) {
            hmin = std::min(hmin, h);
            hmax = std::max(hmax, h);
        }
        double span = std::max(hmax - hmin, 1e-9);
        double x0 = p * pw + margin, xw = pw - 2 * margin;
        auto vx = [&](int i) { return x0 + xw * i / (n - 1); };
        auto vy = [&](int i) { return margin + 25 + (ph - 2 * margin - 50) * (hmax - cp.heights[i]) / span; };

        s += "<text x=\"" + num(p * pw + pw / 2) + "\" y=\"20\" text-anchor=\"middle\" "
             "font-family=\"sans-serif\" font-size=\"14\">" + cp.title + "</text>\n";

        for (int i = 0; i < n; ++i) {
            int j = (i + 1) % n;
            bool fwd = cp.eps[i] > 0;  // arrow i -> j, else j -> i
            int a = fwd ? i : j, b = fwd ? j : i;
            double gap = std::abs(cp.heights[i] - cp.heights[j]);
            std::string dash = std::abs(gap - 1.0) <= 1e-6 ? "" : " stroke-dasharray=\"6,4\"";
            double xa = vx(a), ya = vy(a), xb = vx(b), yb = vy(b);
            // shorten so the arrowhead stops at the vertex circle
            double dx = xb - xa, dy = yb - ya;
            if (j == 0 || i == n - 1) {
                // closing edge drawn as an arc below the axis
                double sgn = fwd == (i == n - 1) ? 1.0 : 1.0;
                (void)sgn;
                double cxm = (xa + xb) / 2, cym = std::max(ya, yb) + 60;
                double L = std::hypot(xb - cxm, yb - cym);
                double ex = xb + (cxm - xb) / L * 8, ey = yb + (cym - yb) / L * 8;
                s += "<path d=\"M " + num(xa) + " " + num(ya) + " Q " + num(cxm) + " " + num(cym) +
                     " " + num(ex) + " " + num(ey) +
                     "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\"" + dash +
                     " marker-end=\"url(#arr)\"/>\n";
            } else {
                double L = std::hypot(dx, dy);
                double ex = xb - dx / L * 8, ey = yb - dy / L * 8;
                double sx = xa + dx / L * 8, sy = ya + dy / L * 8;
                s += "<line x1=\"" + num(sx) + "\" y1=\"" + num(sy) + "\" x2=\"" + num(ex) +
                     "\" y2=\"" + num(ey) + "\" stroke=\"#333\" stroke-width=\"1.5\"" + dash +
                     " marker-end=\"url(#arr)\"/>\n";
            }
        }
        for (int i = 0; i < n; ++i) {
            char lbl[64];
            std::snprintf(lbl, sizeof lbl, "%g", cp.heights[i]);
            s += "<circle cx=\"" + num(vx(i)) + "\" cy=\"" + num(vy(i)) +
                 "\" r=\"5\" fill=\"#1a5fb4\"/>\n";
            s += "<text x=\"" + num(vx(i)) + "\" y=\"" + num(vy(i) - 10) +
                 "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + lbl +
                 "</text>\n";
        }
    }
    s += "</svg>\n";
    return s;
}

/// Polyline chart of several series against a shared abscissa.
inline std::string curves_svg(const std::vector<double>& xs,
                              const std::vector<std::vector<double>>& series,
                              const std::string& xlabel, const std::string& ylabel) {
    using svgdetail::num;
    const double W = 640, H = 420, m = 50;
    double xmin = xs.front(), xmax = xs.back();
    double ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& sr : series)
        for (double v : sr) {
            if (first || v < ymin) ymin = v;
            if (first || v > ymax) ymax = v;
            first = false;
        }
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    auto px = [&](double x) { return m + (W - 2 * m) * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return H - m - (H - 2 * m) * (y - ymin) / (ymax - ymin); };
    static const char* colors[] = {"#1a5fb4", "#c01c28", "#26a269", "#e66100", "#613583", "#000000"};
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" + num(H) +
         "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    s += "<rect width=\"" + num(W) + "\" height=\"" + num(H) + "\" fill=\"white\"/>\n";
    s += "<line x1=\"" + num(m) + "\" y1=\"" + num(H - m) + "\" x2=\"" + num(W - m) + "\" y2=\"" +
         num(H - m) + "\" stroke=\"#666\"/>\n";
    s += "<line x1=\"" + num(m) + "\" y1=\"" + num(m) + "\" x2=\"" + num(m) + "\" y2=\"" +
         num(H - m) + "\" stroke=\"#666\"/>\n";
    s += "<text x=\"" + num(W / 2) + "\" y=\"" + num(H - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + xlabel +
         "</text>\n";
    s += "<text x=\"14\" y=\"" + num(H / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 14 " + num(H / 2) + ")\">" + ylabel + "</text>\n";
    for (size_t k = 0; k < series.size(); ++k) {
        std::string pts;
        for (size_t i = 0; i < xs.size(); ++i)
            pts += num(px(xs[i])) + "," + num(py(series[k][i])) + " ";
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             colors[k % 6] + "\" stroke-width=\"1.5\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace wflow::cli
