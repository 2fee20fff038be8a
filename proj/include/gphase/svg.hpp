#pragma once

// Self-contained SVG line plots: axes, ticks, polylines, error bars and
// shaded bands. No external renderer, no timestamps, deterministic output.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gphase/csv.hpp"

namespace gphase {

struct PlotSeries {
    std::vector<double> x, y;
    std::string color = "#1f77b4";
    bool markers = false;                 // draw points instead of a line
    std::vector<double> yerr;             // optional, with markers
    double split_gap = 0.0;               // break the line when |dy| exceeds this
    std::string label;
};

struct PlotBand {
    std::vector<double> x, y_lo, y_hi;
    std::string color = "#1f77b4";
    double split_gap = 0.0;
};

struct PlotPanel {
    std::string title;
    std::string x_label, y_label;
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    std::vector<double> x_ticks, y_ticks;
    std::vector<PlotBand> bands;
    std::vector<PlotSeries> series;
};

namespace detail {

class PanelWriter {
public:
    PanelWriter(std::ostringstream& out, const PlotPanel& p, double ox, double oy, double w,
                double h)
        : out_(out), p_(p), ox_(ox + 52), oy_(oy + 26), w_(w - 70), h_(h - 64) {}

    double sx(double x) const { return ox_ + (x - p_.x_min) / (p_.x_max - p_.x_min) * w_; }
    double sy(double y) const { return oy_ + h_ - (y - p_.y_min) / (p_.y_max - p_.y_min) * h_; }

    void render() {
        out_ << "<rect x='" << c(ox_) << "' y='" << c(oy_) << "' width='" << c(w_)
             << "' height='" << c(h_) << "' fill='white' stroke='black' stroke-width='1'/>\n";
        for (double t : p_.x_ticks) {
            out_ << "<line x1='" << c(sx(t)) << "' y1='" << c(oy_ + h_) << "' x2='" << c(sx(t))
                 << "' y2='" << c(oy_ + h_ + 4) << "' stroke='black'/>\n";
            text(sx(t), oy_ + h_ + 16, fmt_double(t, 6), "middle");
        }
        for (double t : p_.y_ticks) {
            out_ << "<line x1='" << c(ox_ - 4) << "' y1='" << c(sy(t)) << "' x2='" << c(ox_)
                 << "' y2='" << c(sy(t)) << "' stroke='black'/>\n";
            text(ox_ - 7, sy(t) + 4, fmt_double(t, 6), "end");
        }
        text(ox_ + 0.5 * w_, oy_ - 8, p_.title, "middle", 13);
        text(ox_ + 0.5 * w_, oy_ + h_ + 32, p_.x_label, "middle");
        out_ << "<text x='" << c(ox_ - 38) << "' y='" << c(oy_ + 0.5 * h_)
             << "' font-size='11' text-anchor='middle' transform='rotate(-90 " << c(ox_ - 38)
             << " " << c(oy_ + 0.5 * h_) << ")'>" << p_.y_label << "</text>\n";
        for (const auto& band : p_.bands) draw_band(band);
        double legend_y = oy_ + 12;
        for (const auto& s : p_.series) {
            draw_series(s);
            if (!s.label.empty()) {
                out_ << "<line x1='" << c(ox_ + w_ - 58) << "' y1='" << c(legend_y) << "' x2='"
                     << c(ox_ + w_ - 44) << "' y2='" << c(legend_y) << "' stroke='" << s.color
                     << "' stroke-width='2'/>\n";
                text(ox_ + w_ - 40, legend_y + 3.5, s.label, "start", 10);
                legend_y += 13;
            }
        }
    }

private:
    static std::string c(double v) { return fmt_double(v, 6); }

    void text(double x, double y, const std::string& s, const char* anchor, int size = 11) {
        out_ << "<text x='" << c(x) << "' y='" << c(y) << "' font-size='" << size
             << "' text-anchor='" << anchor << "'>" << s << "</text>\n";
    }

    template <typename Emit>
    void split_runs(const std::vector<double>& y, double gap, const Emit& emit) {
        std::size_t start = 0;
        for (std::size_t i = 1; i <= y.size(); ++i) {
            if (i == y.size() || (gap > 0.0 && std::abs(y[i] - y[i - 1]) > gap)) {
                if (i - start >= 2) emit(start, i);
                start = i;
            }
        }
    }

    void draw_band(const PlotBand& b) {
        split_runs(b.y_lo, b.split_gap, [&](std::size_t s, std::size_t e) {
            out_ << "<polygon fill='" << b.color << "' fill-opacity='0.18' stroke='none' points='";
            for (std::size_t i = s; i < e; ++i) out_ << c(sx(b.x[i])) << "," << c(sy(b.y_lo[i])) << " ";
            for (std::size_t i = e; i-- > s;) out_ << c(sx(b.x[i])) << "," << c(sy(b.y_hi[i])) << " ";
            out_ << "'/>\n";
        });
    }

    void draw_series(const PlotSeries& s) {
        if (s.markers) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i < s.yerr.size() && s.yerr[i] > 0.0)
                    out_ << "<line x1='" << c(sx(s.x[i])) << "' y1='" << c(sy(s.y[i] - s.yerr[i]))
                         << "' x2='" << c(sx(s.x[i])) << "' y2='" << c(sy(s.y[i] + s.yerr[i]))
                         << "' stroke='" << s.color << "' stroke-width='1'/>\n";
                out_ << "<circle cx='" << c(sx(s.x[i])) << "' cy='" << c(sy(s.y[i]))
                     << "' r='2.2' fill='" << s.color << "'/>\n";
            }
            return;
        }
        split_runs(s.y, s.split_gap, [&](std::size_t start, std::size_t end) {
            out_ << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
            for (std::size_t i = start; i < end; ++i)
                out_ << c(sx(s.x[i])) << "," << c(sy(s.y[i])) << " ";
            out_ << "'/>\n";
        });
    }

    std::ostringstream& out_;
    const PlotPanel& p_;
    double ox_, oy_, w_, h_;
};

}  // namespace detail

// Lays panels out in a grid of the given column count.
inline std::string render_svg(const std::vector<PlotPanel>& panels, int columns,
                              double panel_w = 430, double panel_h = 310) {
    int cols = std::max(1, columns);
    int rows = (static_cast<int>(panels.size()) + cols - 1) / cols;
    std::ostringstream out;
    out << "<?xml version='1.0' encoding='UTF-8'?>\n";
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << fmt_double(cols * panel_w, 6)
        << "' height='" << fmt_double(rows * panel_h, 6)
        << "' font-family='Helvetica,sans-serif'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        double ox = static_cast<double>(i % cols) * panel_w;
        double oy = static_cast<double>(i / cols) * panel_h;
        detail::PanelWriter(out, panels[i], ox, oy, panel_w, panel_h).render();
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace gphase
