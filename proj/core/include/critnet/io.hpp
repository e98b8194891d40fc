#ifndef CRITNET_IO_HPP
#define CRITNET_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "critnet/analysis.hpp"
#include "critnet/evolution.hpp"
#include "critnet/glauber.hpp"

namespace critnet {

// CSV formats are the repo's wire contract: '.' decimal separator, one
// header line, one row per record.

void write_population_trace_csv(const std::filesystem::path& path, const PopulationTrace& trace);
PopulationTrace read_population_trace_csv(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const Trace& trace);
Trace read_trace_csv(const std::filesystem::path& path);

void write_region_map_csv(const std::filesystem::path& path, const BifurcationMap& map);

void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfilePoint>& profile);

// Sidecar run metadata: one `key = value` per line.
void write_manifest(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

// -- SVG plotting -------------------------------------------------------------

struct Series {
    std::string label;
    std::string color = "#1f6fb2";
    std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
    std::string title;
    std::string x_label, y_label;
    int width = 720, height = 480;
    // Axis ranges; auto-fit when lo >= hi.
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
};

// Line plot of one or more series (time series, phase portraits, profiles).
void write_line_plot_svg(const std::filesystem::path& path, const PlotSpec& spec,
                         const std::vector<Series>& series);

// Region heat map, one filled cell per grid point, with a legend.
void write_region_map_svg(const std::filesystem::path& path, const BifurcationMap& map,
                          const std::string& title);

} // namespace critnet

#endif
