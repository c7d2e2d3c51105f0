#include "otoprv/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace otoprv::svg {

namespace {

constexpr std::array kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                              "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
};

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series) {
    constexpr double W = 640, H = 420, L = 70, R = 150, T = 40, B = 55;
    Range xr, yr;
    for (const auto& s : series) {
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    xr.pad();
    yr.pad();
    const auto px = [&](double x) { return L + (x - xr.lo) / (xr.hi - xr.lo) * (W - L - R); };
    const auto py = [&](double y) { return H - B - (y - yr.lo) / (yr.hi - yr.lo) * (H - T - B); };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(title) << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double yv = yr.lo + (yr.hi - yr.lo) * t / 4.0;
        os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << yv
           << "</text>\n";
        const double xv = xr.lo + (xr.hi - xr.lo) * t / 4.0;
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << xv
           << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n";
    os << "<text transform=\"translate(18," << (T + H - B) / 2
       << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* colour = kPalette[s % kPalette.size()];
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i)
            os << px(series[s].x[i]) << ',' << py(series[s].y[i]) << ' ';
        os << "\"/>\n";
        for (std::size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i)
            os << "<circle cx=\"" << px(series[s].x[i]) << "\" cy=\"" << py(series[s].y[i])
               << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
        const double ly = T + 10 + 18.0 * static_cast<double>(s);
        os << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 35
           << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - R + 40 << "\" y=\"" << ly + 4 << "\">" << escape(series[s].label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string route_map(const Instance& instance, const Solution& solution, const std::string& title) {
    constexpr double W = 560, H = 600, M = 30, T = 40;
    Range xr, yr;
    for (const Poi& p : instance.pois())
        if (p.position) {
            xr.add(p.position->x);
            yr.add(p.position->y);
        }
    xr.pad();
    yr.pad();
    const double scale = std::min((W - 2 * M) / (xr.hi - xr.lo), (H - T - 2 * M) / (yr.hi - yr.lo));
    const auto px = [&](double x) { return M + (x - xr.lo) * scale; };
    const auto py = [&](double y) { return H - M - (y - yr.lo) * scale; };
    double max_w = 0.0;
    for (const Poi& p : instance.pois()) max_w = std::max(max_w, p.weight);

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(title) << "</text>\n";
    for (std::size_t k = 0; k < solution.routes.size(); ++k) {
        const auto& visits = solution.routes[k].visits;
        if (visits.size() < 2) continue;
        os << "<polyline fill=\"none\" stroke=\"" << kPalette[k % kPalette.size()]
           << "\" stroke-width=\"1.5\" points=\"";
        for (PoiId v : visits) {
            const auto& pos = instance.pois()[static_cast<std::size_t>(v)].position;
            if (pos) os << px(pos->x) << ',' << py(pos->y) << ' ';
        }
        os << "\"/>\n";
    }
    for (const Poi& p : instance.pois()) {
        if (!p.position) continue;
        const double r = 2.0 + (max_w > 0.0 ? 4.0 * p.weight / max_w : 0.0);
        const int q = p.id < static_cast<PoiId>(solution.visit_counts.size())
                          ? solution.visit_counts[static_cast<std::size_t>(p.id)]
                          : 0;
        os << "<circle cx=\"" << px(p.position->x) << "\" cy=\"" << py(p.position->y) << "\" r=\"" << r
           << "\" fill=\"" << (q > 0 ? "black" : "none") << "\" stroke=\"black\"/>\n";
        if (q > 1)
            os << "<text x=\"" << px(p.position->x) + r + 1 << "\" y=\"" << py(p.position->y) - r
               << "\">" << q << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace otoprv::svg
