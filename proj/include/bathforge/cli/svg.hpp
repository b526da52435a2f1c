// svg.hpp: minimal static line plots

#pragma once

#include <string>
#include <vector>

namespace bathforge::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotStyle {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x{false};
    bool log_y{false};
    std::vector<double> x_markers;   // dashed vertical lines
    std::vector<double> y_markers;   // dashed horizontal lines
};

// Non-finite points (and non-positive ones on log axes) are skipped.
std::string render_svg(const std::vector<Series>& series, const PlotStyle& style);

} // namespace bathforge::cli
