#include "hourscap/io/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "hourscap/io/output.hpp"

namespace hourscap::io {

namespace {

constexpr double kWidth = 760;
constexpr double kHeight = 500;
constexpr double kLeft = 80;
constexpr double kRight = 190;
constexpr double kTop = 50;
constexpr double kBottom = 60;

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

// viridis, five stops
constexpr std::array<std::array<double, 3>, 5> kRamp{{
    {68, 1, 84},
    {59, 82, 139},
    {33, 145, 140},
    {94, 201, 98},
    {253, 231, 37},
}};

const double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string px(double x) { return fmt("%.2f", x); }

std::string label(double x) {
    if (std::abs(x) < 1e-12) x = 0.0;
    return fmt("%g", x);
}

double nice_step(double raw) {
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    const double m = f < 1.5 ? 1 : f < 3.5 ? 2 : f < 7.5 ? 5 : 10;
    return m * mag;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
    const double step = nice_step((hi - lo) / target);
    std::vector<double> out;
    for (auto k = static_cast<long long>(std::ceil(lo / step - 1e-9)); k * step <= hi + 1e-9 * step; ++k) {
        out.push_back(static_cast<double>(k) * step);
    }
    return out;
}

struct Scale {
    double lo, hi, p0, p1;
    double operator()(double v) const { return p0 + (v - lo) / (hi - lo) * (p1 - p0); }
};

std::pair<double, double> padded_range(double lo, double hi) {
    if (!(hi - lo > 1e-12 * std::max(1.0, std::abs(hi)))) {
        const double pad = std::max(1.0, 0.1 * std::abs(lo));
        return {lo - pad, hi + pad};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string ramp_color(double u) {
    u = std::clamp(u, 0.0, 1.0) * (kRamp.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(u), kRamp.size() - 2);
    const double t = u - i;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(kRamp[i][0] + t * (kRamp[i + 1][0] - kRamp[i][0]))),
                  static_cast<int>(std::lround(kRamp[i][1] + t * (kRamp[i + 1][1] - kRamp[i][1]))),
                  static_cast<int>(std::lround(kRamp[i][2] + t * (kRamp[i + 1][2] - kRamp[i][2]))));
    return buf;
}

class Svg {
public:
    Svg() {
        os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

    std::ostream& raw() { return os_; }

    void text(double x, double y, const std::string& s, const char* anchor = "start", const char* extra = "") {
        os_ << "<text x=\"" << px(x) << "\" y=\"" << px(y) << "\" text-anchor=\"" << anchor << "\"" << extra << '>'
            << s << "</text>\n";
    }

    void line(double x0, double y0, double x1, double y1, const char* style) {
        os_ << "<line x1=\"" << px(x0) << "\" y1=\"" << px(y0) << "\" x2=\"" << px(x1) << "\" y2=\"" << px(y1)
            << "\" " << style << "/>\n";
    }

    std::string finish() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    std::ostringstream os_;
};

Scale x_scale(double lo, double hi) { return {lo, hi, kLeft, kWidth - kRight}; }
Scale y_scale(double lo, double hi) { return {lo, hi, kHeight - kBottom, kTop}; }

void frame(Svg& svg, const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    svg.text(kWidth / 2 - (kRight - kLeft) / 2, 28, title, "middle", " font-size=\"16\"");
    svg.text((kLeft + kWidth - kRight) / 2, kHeight - 16, xlabel, "middle");
    const double cy = (kTop + kHeight - kBottom) / 2;
    svg.raw() << "<text x=\"22\" y=\"" << px(cy) << "\" text-anchor=\"middle\" transform=\"rotate(-90 22 " << px(cy)
              << ")\">" << ylabel << "</text>\n";
}

// Numeric axes with ticks and light gridlines.
void axes(Svg& svg, const Scale& xs, const Scale& ys) {
    const char* grid = "stroke=\"#e0e0e0\" stroke-width=\"1\"";
    for (double v : nice_ticks(xs.lo, xs.hi, 8)) {
        svg.line(xs(v), ys.p0, xs(v), ys.p1, grid);
        svg.text(xs(v), ys.p0 + 18, label(v), "middle");
    }
    for (double v : nice_ticks(ys.lo, ys.hi, 6)) {
        svg.line(xs.p0, ys(v), xs.p1, ys(v), grid);
        svg.text(xs.p0 - 8, ys(v) + 4, label(v), "end");
    }
    svg.raw() << "<rect x=\"" << px(xs.p0) << "\" y=\"" << px(ys.p1) << "\" width=\"" << px(xs.p1 - xs.p0)
              << "\" height=\"" << px(ys.p0 - ys.p1) << "\" fill=\"none\" stroke=\"#333\"/>\n";
}

// Polyline through the valid points; a missing point breaks the line.
void series(Svg& svg, const Scale& xs, const Scale& ys, const std::vector<std::pair<double, double>>& pts,
            const char* color) {
    std::vector<std::vector<std::pair<double, double>>> runs(1);
    for (const auto& p : pts) {
        if (std::isnan(p.second)) {
            if (!runs.back().empty()) runs.emplace_back();
        } else {
            runs.back().push_back(p);
        }
    }
    for (const auto& run : runs) {
        if (run.size() >= 2) {
            svg.raw() << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (std::size_t i = 0; i < run.size(); ++i) {
                svg.raw() << (i ? " " : "") << px(xs(run[i].first)) << ',' << px(ys(run[i].second));
            }
            svg.raw() << "\"/>\n";
        }
        for (const auto& p : run) {
            svg.raw() << "<circle cx=\"" << px(xs(p.first)) << "\" cy=\"" << px(ys(p.second))
                      << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
    }
}

void missing_note(Svg& svg, std::size_t missing, double y) {
    if (missing == 0) return;
    svg.text(kWidth - kRight + 16, y, "blank: no valid result", "start", " fill=\"#555\"");
    svg.text(kWidth - kRight + 16, y + 15, "(" + std::to_string(missing) + " cell" + (missing == 1 ? "" : "s") + ")",
             "start", " fill=\"#555\"");
}

std::pair<double, double> value_range(const std::vector<double>& v) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : v) {
        if (std::isnan(x)) continue;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    if (lo > hi) return {0.0, 0.0};
    return {lo, hi};
}

std::string render_hours_curve(const SweepResult& r) {
    Svg svg;
    frame(svg, "Required TFP by hours cap", "formal hours cap (h/week)", "A_req (%)");
    std::vector<std::pair<double, double>> pts;
    std::vector<double> xs_v, ys_v;
    std::size_t missing = 0;
    for (const auto& c : r.cells) {
        const double y = c.valid ? c.a_req_terminal_pct : kMissing;
        missing += c.valid ? 0 : 1;
        pts.emplace_back(c.hbar, y);
        xs_v.push_back(c.hbar);
        ys_v.push_back(y);
    }
    const auto [xlo, xhi] = padded_range(value_range(xs_v).first, value_range(xs_v).second);
    const auto yr = value_range(ys_v);
    const auto [ylo, yhi] = padded_range(std::min(0.0, yr.first), std::max(0.0, yr.second));
    const Scale xs = x_scale(xlo, xhi);
    const Scale ys = y_scale(ylo, yhi);
    axes(svg, xs, ys);
    series(svg, xs, ys, pts, kPalette[0]);
    missing_note(svg, missing, kTop + 20);
    return svg.finish();
}

std::string render_heatmap(const SweepResult& r) {
    const auto& spec = r.spec;
    const std::size_t rows = spec.sigma_sub.size();
    const std::size_t cols = spec.relief.size();
    std::vector<double> values(rows * cols, kMissing);
    std::size_t missing = 0;
    for (std::size_t i = 0; i < r.cells.size() && i < values.size(); ++i) {
        if (r.cells[i].valid) {
            values[i] = r.cells[i].a_req_terminal_pct;
        } else {
            ++missing;
        }
    }
    const auto [vlo, vhi] = value_range(values);

    Svg svg;
    frame(svg, "Required TFP (%) under a " + label(spec.hbar_cap) + "h cap", "wedge relief for small firms",
          "substitution elasticity \xcf\x83");
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    const double cw = (x1 - x0) / static_cast<double>(cols);
    const double ch = (y0 - y1) / static_cast<double>(rows);
    // index space -> pixels; rows grow upward
    auto gx = [&](double c) { return x0 + c * cw; };
    auto gy = [&](double rr) { return y0 - rr * ch; };

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = values[i * cols + j];
            const std::string fill = std::isnan(v) ? "white" : ramp_color(vhi > vlo ? (v - vlo) / (vhi - vlo) : 0.5);
            svg.raw() << "<rect x=\"" << px(gx(j)) << "\" y=\"" << px(gy(i + 1.0)) << "\" width=\"" << px(cw)
                      << "\" height=\"" << px(ch) << "\" fill=\"" << fill << "\"/>\n";
        }
    }
    for (std::size_t j = 0; j < cols; ++j) svg.text(gx(j + 0.5), y0 + 18, label(spec.relief[j]), "middle");
    for (std::size_t i = 0; i < rows; ++i) svg.text(x0 - 8, gy(i + 0.5) + 4, label(spec.sigma_sub[i]), "end");
    svg.raw() << "<rect x=\"" << px(x0) << "\" y=\"" << px(y1) << "\" width=\"" << px(x1 - x0) << "\" height=\""
              << px(y0 - y1) << "\" fill=\"none\" stroke=\"#333\"/>\n";

    const auto levels = nice_levels(vlo, vhi);
    const auto segments = contour_segments(values, rows, cols, levels);
    std::map<double, std::vector<const ContourSegment*>> by_level;
    for (const auto& s : segments) {
        svg.line(gx(s.x0), gy(s.y0), gx(s.x1), gy(s.y1), "stroke=\"#111\" stroke-width=\"1.3\"");
        by_level[s.level].push_back(&s);
    }
    for (const auto& [level, segs] : by_level) {
        const ContourSegment& s = *segs[segs.size() / 2];
        const std::string text = label(level) + "%";
        const double cx = gx((s.x0 + s.x1) / 2), cy = gy((s.y0 + s.y1) / 2);
        const double w = 6.5 * static_cast<double>(text.size()) + 6;
        svg.raw() << "<rect x=\"" << px(cx - w / 2) << "\" y=\"" << px(cy - 8) << "\" width=\"" << px(w)
                  << "\" height=\"16\" rx=\"3\" fill=\"white\" fill-opacity=\"0.85\"/>\n";
        svg.text(cx, cy + 4, text, "middle", " font-size=\"11\"");
    }

    // color bar
    const double bx = x1 + 24, bw = 16, btop = kTop + 10, bh = 180;
    constexpr int kSteps = 40;
    for (int k = 0; k < kSteps; ++k) {
        const double u = 1.0 - (k + 0.5) / kSteps;
        svg.raw() << "<rect x=\"" << px(bx) << "\" y=\"" << px(btop + k * bh / kSteps) << "\" width=\"" << px(bw)
                  << "\" height=\"" << px(bh / kSteps + 0.5) << "\" fill=\"" << ramp_color(u) << "\"/>\n";
    }
    svg.text(bx + bw + 6, btop + 8, fmt("%.3g", vhi) + "%");
    svg.text(bx + bw + 6, btop + bh, fmt("%.3g", vlo) + "%");
    svg.text(bx, btop - 8, "iso-A_req (%)");
    missing_note(svg, missing, btop + bh + 30);
    return svg.finish();
}

std::string render_frontier(const SweepResult& r) {
    const auto& spec = r.spec;
    const std::size_t cols = spec.relief.size();
    std::vector<double> all;
    std::size_t missing = 0;
    for (const auto& c : r.cells) {
        all.push_back(c.valid ? c.d_informality_pp : kMissing);
        missing += c.valid ? 0 : 1;
    }
    const auto vr = value_range(all);
    const auto [ylo, yhi] = padded_range(std::min(0.0, vr.first), std::max(0.0, vr.second));
    const auto [xlo, xhi] = padded_range(spec.relief.front(), spec.relief.back());

    Svg svg;
    frame(svg, "Informality response to wedge relief (" + label(spec.hbar_cap) + "h cap)",
          "wedge relief for small firms", "\xce\x94 informality (p.p.)");
    const Scale xs = x_scale(xlo, xhi);
    const Scale ys = y_scale(ylo, yhi);
    axes(svg, xs, ys);
    svg.line(xs.p0, ys(0.0), xs.p1, ys(0.0), "stroke=\"#000\" stroke-width=\"1.2\" stroke-dasharray=\"6,4\"");

    for (std::size_t s = 0; s < spec.sigma_sub.size(); ++s) {
        const char* color = kPalette[s % kPalette.size()];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t j = 0; j < cols; ++j) pts.emplace_back(spec.relief[j], all[s * cols + j]);
        series(svg, xs, ys, pts, color);
        const double ly = kTop + 14 + 18 * static_cast<double>(s);
        svg.line(xs.p1 + 16, ly - 4, xs.p1 + 40, ly - 4, (std::string("stroke=\"") + color + "\" stroke-width=\"2\"").c_str());
        svg.text(xs.p1 + 46, ly, "\xcf\x83 = " + label(spec.sigma_sub[s]));
    }
    for (const auto& z : r.crossings) {
        if (!z.relief) continue;
        svg.raw() << "<circle cx=\"" << px(xs(*z.relief)) << "\" cy=\"" << px(ys(0.0))
                  << "\" r=\"4\" fill=\"none\" stroke=\"#000\"/>\n";
    }
    const double note_y = kTop + 14 + 18 * static_cast<double>(spec.sigma_sub.size()) + 10;
    svg.line(xs.p1 + 16, note_y - 4, xs.p1 + 40, note_y - 4, "stroke=\"#000\" stroke-dasharray=\"6,4\"");
    svg.text(xs.p1 + 46, note_y, "\xce\x94 informality = 0");
    missing_note(svg, missing, note_y + 24);
    return svg.finish();
}

}  // namespace

std::vector<double> nice_levels(double lo, double hi, int target) {
    std::vector<double> out;
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) return out;
    const double step = nice_step((hi - lo) / target);
    for (auto k = static_cast<long long>(std::floor(lo / step)); static_cast<double>(k) * step < hi; ++k) {
        const double v = static_cast<double>(k) * step;
        if (v > lo) out.push_back(v);
    }
    return out;
}

std::vector<ContourSegment> contour_segments(const std::vector<double>& values, std::size_t rows,
                                             std::size_t cols, const std::vector<double>& levels) {
    std::vector<ContourSegment> out;
    if (rows < 2 || cols < 2) return out;
    for (double level : levels) {
        for (std::size_t r = 0; r + 1 < rows; ++r) {
            for (std::size_t c = 0; c + 1 < cols; ++c) {
                // corners counter-clockwise from (r, c)
                const std::array<double, 4> v{values[r * cols + c], values[r * cols + c + 1],
                                              values[(r + 1) * cols + c + 1], values[(r + 1) * cols + c]};
                if (std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); })) continue;
                const double xc = c + 0.5, yc = r + 0.5;
                const std::array<std::pair<double, double>, 4> p{
                    std::pair{xc, yc}, {xc + 1, yc}, {xc + 1, yc + 1}, {xc, yc + 1}};
                std::array<bool, 4> above{};
                for (int k = 0; k < 4; ++k) above[k] = v[k] >= level;

                // crossing on edge k (corner k -> corner k+1), if any
                std::array<std::optional<std::pair<double, double>>, 4> cross;
                for (int k = 0; k < 4; ++k) {
                    const int n = (k + 1) % 4;
                    if (above[k] == above[n]) continue;
                    const double t = (level - v[k]) / (v[n] - v[k]);
                    cross[k] = std::pair{p[k].first + t * (p[n].first - p[k].first),
                                         p[k].second + t * (p[n].second - p[k].second)};
                }
                auto emit = [&](int a, int b) {
                    out.push_back({level, cross[a]->first, cross[a]->second, cross[b]->first, cross[b]->second});
                };
                std::vector<int> hit;
                for (int k = 0; k < 4; ++k) {
                    if (cross[k]) hit.push_back(k);
                }
                if (hit.size() == 2) {
                    emit(hit[0], hit[1]);
                } else if (hit.size() == 4) {
                    // saddle: the center value decides which diagonal is connected
                    const bool center = (v[0] + v[1] + v[2] + v[3]) / 4 >= level;
                    if (center == above[0]) {
                        emit(0, 1);  // cuts off corner 1
                        emit(2, 3);  // cuts off corner 3
                    } else {
                        emit(3, 0);
                        emit(1, 2);
                    }
                }
            }
        }
    }
    return out;
}

std::string render_svg(const SweepResult& result) {
    switch (result.spec.kind) {
        case SweepKind::hours_curve: return render_hours_curve(result);
        case SweepKind::heatmap: return render_heatmap(result);
        case SweepKind::frontier: return render_frontier(result);
    }
    return {};
}

void emit_plot(const SweepResult& result, const std::filesystem::path& path) { write_file(path, render_svg(result)); }

}  // namespace hourscap::io
