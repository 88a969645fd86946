#include "sdnapl/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "sdnapl/errors.hpp"

namespace sdnapl {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = kWidth - 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = kHeight - 55.0;

const char* color_for(const std::string& scenario, std::size_t index) {
    static const std::map<std::string, const char*> fixed{
        {"ms", "#c0392b"}, {"ss", "#2980b9"}, {"ps2", "#27ae60"},
        {"ps3", "#8e44ad"}, {"cs", "#e67e22"},
    };
    const auto it = fixed.find(scenario);
    if (it != fixed.end()) return it->second;
    static const char* cycle[] = {"#16a085", "#7f8c8d", "#2c3e50", "#d35400"};
    return cycle[index % 4];
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

double nice_step(double raw) {
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double unit = raw / mag;
    if (unit <= 1.0) return mag;
    if (unit <= 2.0) return 2.0 * mag;
    if (unit <= 5.0) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace

std::string render_apl_chart(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw ValidationError("no result rows to plot");

    std::vector<int> betas;
    std::vector<std::string> scenarios;  // first-appearance order
    double max_y = 0.0;
    for (const ResultRow& r : rows) {
        if (std::find(betas.begin(), betas.end(), r.beta) == betas.end()) betas.push_back(r.beta);
        if (std::find(scenarios.begin(), scenarios.end(), r.scenario) == scenarios.end())
            scenarios.push_back(r.scenario);
        max_y = std::max({max_y, r.analytic, r.simulated});
    }
    std::sort(betas.begin(), betas.end());
    if (max_y <= 0.0) max_y = 1.0;

    const double step = nice_step(max_y * 1.08 / 5.0);
    const double top_y = step * std::ceil(max_y * 1.08 / step);

    const auto x_at = [&](int beta) {
        const auto it = std::find(betas.begin(), betas.end(), beta);
        const std::size_t idx = static_cast<std::size_t>(it - betas.begin());
        if (betas.size() == 1) return (kLeft + kRight) / 2.0;
        return kLeft + static_cast<double>(idx) * (kRight - kLeft) /
                           static_cast<double>(betas.size() - 1);
    };
    const auto y_at = [&](double v) { return kBottom - v / top_y * (kBottom - kTop); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\" "
           "viewBox=\"0 0 720 480\">\n";
    svg += "<rect width=\"720\" height=\"480\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", (kLeft + kRight) / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\" "
           "fill=\"#222222\">average path length vs beta (solid: simulated, dashed: "
           "analytic)</text>\n";

    // Axes and grid.
    for (double v = 0.0; v <= top_y + step / 2.0; v += step) {
        const double y = y_at(v);
        svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" +
               fmt("%.2f", kRight) + "\" y2=\"" + fmt("%.2f", y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", kLeft - 8.0) + "\" y=\"" + fmt("%.2f", y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#222222\">" +
               fmt("%.6g", v) + "</text>\n";
    }
    for (int beta : betas) {
        const double x = x_at(beta);
        svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", kBottom) + "\" x2=\"" +
               fmt("%.2f", x) + "\" y2=\"" + fmt("%.2f", kBottom + 5.0) +
               "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", kBottom + 20.0) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#222222\">" +
               std::to_string(beta) + "</text>\n";
    }
    svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" +
           fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", kBottom) +
           "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kBottom) + "\" x2=\"" +
           fmt("%.2f", kRight) + "\" y2=\"" + fmt("%.2f", kBottom) +
           "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", (kLeft + kRight) / 2.0) + "\" y=\"" +
           fmt("%.2f", kHeight - 12.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "fill=\"#222222\">beta</text>\n";

    // One solid (simulated) and one dashed (analytic) polyline per scenario,
    // points ordered by beta.
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
        const std::string& scenario = scenarios[si];
        const char* color = color_for(scenario, si);
        std::string sim_points, ana_points, markers;
        for (int beta : betas)
            for (const ResultRow& r : rows) {
                if (r.beta != beta || r.scenario != scenario) continue;
                const double x = x_at(beta);
                sim_points += fmt("%.2f", x) + "," + fmt("%.2f", y_at(r.simulated)) + " ";
                ana_points += fmt("%.2f", x) + "," + fmt("%.2f", y_at(r.analytic)) + " ";
                markers += "<circle cx=\"" + fmt("%.2f", x) + "\" cy=\"" +
                           fmt("%.2f", y_at(r.simulated)) + "\" r=\"3\" fill=\"" + color +
                           "\"/>\n";
                break;
            }
        if (!sim_points.empty()) sim_points.pop_back();
        if (!ana_points.empty()) ana_points.pop_back();
        svg += "<polyline points=\"" + sim_points + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<polyline points=\"" + ana_points + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
        svg += markers;
    }

    // Legend.
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
        const double y = kTop + 14.0 + static_cast<double>(si) * 20.0;
        const char* color = color_for(scenarios[si], si);
        svg += "<line x1=\"" + fmt("%.2f", kRight + 16.0) + "\" y1=\"" + fmt("%.2f", y - 4.0) +
               "\" x2=\"" + fmt("%.2f", kRight + 44.0) + "\" y2=\"" + fmt("%.2f", y - 4.0) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", kRight + 50.0) + "\" y=\"" + fmt("%.2f", y) +
               "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222222\">" + scenarios[si] +
               "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace sdnapl
