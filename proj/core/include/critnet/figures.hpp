#ifndef CRITNET_FIGURES_HPP
#define CRITNET_FIGURES_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "critnet/scenario.hpp"

namespace critnet {

// Built-in figure ids, each bound to a fixed parameter set.
const std::vector<std::string>& figure_ids();

// Runs the named figure scenario and writes its CSV and SVG artifacts under
// out_dir. Throws ConfigError for unknown ids.
RunResult reproduce_figure(const std::string& id, const std::filesystem::path& out_dir);

// Standard four-parameter regulation setting used by the later figures.
RegulationConfig standard_regulation();

// Initial condition for the chaotic run; pinned because the chaotic
// attractor is reached only from some initial values.
ExtendedState chaotic_initial_state();

} // namespace critnet

#endif
