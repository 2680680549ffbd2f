#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace strongfield::cli {

enum class PlotStyle {
  kOverlay,  // every CSV as one curve in a single panel
  kGauges,   // length-gauge curves in the main panel, velocity-gauge ones in a second panel
};

/// Self-contained gnuplot script (data embedded as inline blocks) with a log y axis
/// and one curve per (method, gauge, state). Throws Error(kConfig) for an empty
/// list and Error(kIo) for unreadable CSVs.
void write_plot_script(std::ostream& os, const std::vector<std::filesystem::path>& csvs,
                       PlotStyle style, const std::string& image = "spectrum.png");

}  // namespace strongfield::cli
