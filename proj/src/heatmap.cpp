#include "hvdc/heatmap.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hvdc/errors.hpp"

namespace hvdc {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

std::string cell_label(const RegionCell& cell, HeatmapField field) {
    switch (field) {
        case HeatmapField::LmiExistence: return to_string(cell.lmi_existence);
        case HeatmapField::LmiPowersharing: return to_string(cell.lmi_powersharing);
        case HeatmapField::Newton: return to_string(cell.newton);
        case HeatmapField::Stability: return to_string(cell.stability);
    }
    return "SKIPPED";
}

std::string label_color(const std::string& label) {
    if (label == "FEASIBLE") return "#f4c430";  // certified: yellow
    if (label == "NOT_FOUND") return "#2f6fd0";  // inconclusive: blue
    if (label == "FOUND" || label == "STABLE") return "#2e7d32";
    if (label == "NONE" || label == "UNSTABLE") return "#c62828";
    if (label == "INCONCLUSIVE") return "#ff8f00";
    return "#cfcfcf";  // SKIPPED
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string to_string(HeatmapField f) {
    switch (f) {
        case HeatmapField::LmiExistence: return "lmi_existence";
        case HeatmapField::LmiPowersharing: return "lmi_powersharing";
        case HeatmapField::Newton: return "newton";
        case HeatmapField::Stability: return "stability";
    }
    return "lmi_existence";
}

HeatmapField heatmap_field_from_string(const std::string& name) {
    if (name == "lmi_existence") return HeatmapField::LmiExistence;
    if (name == "lmi_powersharing") return HeatmapField::LmiPowersharing;
    if (name == "newton") return HeatmapField::Newton;
    if (name == "stability") return HeatmapField::Stability;
    throw Error(ErrorCode::InvalidSpec, "unknown heatmap field '" + name + "'");
}

std::string render_heatmap_svg(const SweepResult& result, HeatmapField field,
                               const std::string& title) {
    if (result.axis_values.empty() || result.cells.size() != result.expected_cells()) {
        throw Error(ErrorCode::InvalidSpec, "region map is empty or inconsistent");
    }
    const bool two_d = result.axis_values.size() == 2;
    const std::size_t nx = result.axis_values[0].size();
    const std::size_t ny = two_d ? result.axis_values[1].size() : 1;

    const double margin_left = 84.0, margin_bottom = 56.0, margin_top = 46.0,
                 margin_right = 190.0;
    const double plot_w = 560.0;
    const double plot_h = two_d ? 560.0 * static_cast<double>(ny) / static_cast<double>(nx)
                                : 64.0;
    const double height = margin_top + std::max(plot_h, 120.0) + margin_bottom;
    const double width = margin_left + plot_w + margin_right;
    const double cell_w = plot_w / static_cast<double>(nx);
    const double cell_h = plot_h / static_cast<double>(ny);
    const double plot_y0 = margin_top;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
        << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' '
        << fmt(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    const std::string heading =
        title.empty() ? "region map: " + to_string(field) : title;
    svg << "<text x=\"" << fmt(margin_left) << "\" y=\"28\" font-family=\"sans-serif\" "
           "font-size=\"16\" fill=\"#222\">"
        << xml_escape(heading) << "</text>\n";

    // Cells: axis 0 along x; axis 1 along y with the low end at the bottom.
    std::set<std::string> labels_present;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const RegionCell& cell = result.cells[ix * ny + iy];
            const std::string label = cell_label(cell, field);
            labels_present.insert(label);
            const double x = margin_left + static_cast<double>(ix) * cell_w;
            const double y = plot_y0 + plot_h - static_cast<double>(iy + 1) * cell_h;
            svg << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
                << fmt(cell_w + 0.35) << "\" height=\"" << fmt(cell_h + 0.35)
                << "\" fill=\"" << label_color(label) << "\"";
            if (cell.consistency_flag) svg << " stroke=\"#000\" stroke-width=\"1.5\"";
            svg << "/>\n";
        }
    }

    // Frame and axis tick labels (ends plus midpoint).
    svg << "<rect x=\"" << fmt(margin_left) << "\" y=\"" << fmt(plot_y0) << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    const auto& ax0 = result.axis_values[0];
    for (const double frac : {0.0, 0.5, 1.0}) {
        const double value = ax0.front() + frac * (ax0.back() - ax0.front());
        const double x = margin_left + frac * plot_w;
        svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(plot_y0 + plot_h + 18.0)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\" "
               "text-anchor=\"middle\">"
            << fmt(value) << "</text>\n";
    }
    svg << "<text x=\"" << fmt(margin_left + plot_w / 2.0) << "\" y=\""
        << fmt(plot_y0 + plot_h + 38.0)
        << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\" "
           "text-anchor=\"middle\">"
        << xml_escape(result.axis_names[0]) << "</text>\n";
    if (two_d) {
        const auto& ax1 = result.axis_values[1];
        for (const double frac : {0.0, 0.5, 1.0}) {
            const double value = ax1.front() + frac * (ax1.back() - ax1.front());
            const double y = plot_y0 + plot_h - frac * plot_h;
            svg << "<text x=\"" << fmt(margin_left - 8.0) << "\" y=\"" << fmt(y + 4.0)
                << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\" "
                   "text-anchor=\"end\">"
                << fmt(value) << "</text>\n";
        }
        svg << "<text x=\"18\" y=\"" << fmt(plot_y0 + plot_h / 2.0)
            << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\" "
               "text-anchor=\"middle\" transform=\"rotate(-90 18 "
            << fmt(plot_y0 + plot_h / 2.0) << ")\">" << xml_escape(result.axis_names[1])
            << "</text>\n";
    }

    // Legend for the labels that actually occur.
    double legend_y = plot_y0 + 8.0;
    const double legend_x = margin_left + plot_w + 24.0;
    for (const auto& label : labels_present) {
        svg << "<rect x=\"" << fmt(legend_x) << "\" y=\"" << fmt(legend_y - 11.0)
            << "\" width=\"14\" height=\"14\" fill=\"" << label_color(label)
            << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
        svg << "<text x=\"" << fmt(legend_x + 20.0) << "\" y=\"" << fmt(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">"
            << xml_escape(label) << "</text>\n";
        legend_y += 22.0;
    }
    if (result.violations > 0) {
        svg << "<text x=\"" << fmt(legend_x) << "\" y=\"" << fmt(legend_y + 4.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#c62828\">"
            << result.violations << " consistency violation(s)</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace hvdc
