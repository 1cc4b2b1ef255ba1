#pragma once
#include <string>
#include <vector>

namespace dpsac {

// Grouped bar chart as a standalone SVG. values[series][category].
void write_grouped_bar_svg(const std::string& path, const std::string& title,
                           const std::vector<std::string>& categories,
                           const std::vector<std::string>& series,
                           const std::vector<std::vector<double>>& values);

// Rebuilds both charts of a sweep from its CSV aggregates ("mean" rows):
// <prefix>_efficiency.svg and <prefix>_dilation.svg next to the CSV output.
// series_column selects what the bar groups compare: "scheduler" or "updater".
void emit_charts_from_csv(const std::string& csv_path, const std::string& out_dir,
                          const std::string& prefix, const std::string& series_column);

}  // namespace dpsac
