#pragma once

#include <string>
#include <vector>

#include "otoprv/model.hpp"

namespace otoprv::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Line chart with one polyline per series and a legend.
std::string line_plot(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<Series>& series);

/// POIs sized by weight, routes as coloured polylines, visit counts above 1 labelled.
/// POIs without coordinates are skipped.
std::string route_map(const Instance& instance, const Solution& solution, const std::string& title);

}  // namespace otoprv::svg
