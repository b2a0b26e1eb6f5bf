#pragma once

#include <string>

#include "qda/run_config.hpp"

namespace qda {

// Writes a self-contained gnuplot script for a completed sweep: simulated
// points from the CSV, the matching reference curve, and (photon4) the +/-2
// CHSH guide lines.  With has_results false only the curves are plotted.
// Supported sweep modes: proton, photon, photon4, malus, oracle.
void write_plot_script(const std::string& path, const RunConfig& config,
                       const std::string& csv_path, bool has_results = true);

}  // namespace qda
