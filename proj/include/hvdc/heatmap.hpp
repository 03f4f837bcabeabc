#pragma once

#include <string>

#include "hvdc/sweep.hpp"

namespace hvdc {

/// Which per-cell verdict a heatmap paints.
enum class HeatmapField { LmiExistence, LmiPowersharing, Newton, Stability };

std::string to_string(HeatmapField f);
HeatmapField heatmap_field_from_string(const std::string& name);

/// Renders a region map as a standalone SVG document. Certified cells
/// (FEASIBLE) paint yellow and inconclusive ones (NOT_FOUND) blue — the
/// usual region-map colors — while skipped analyses paint gray. The first
/// axis runs along x; 1D sweeps render as a single horizontal strip.
std::string render_heatmap_svg(const SweepResult& result, HeatmapField field,
                               const std::string& title = {});

}  // namespace hvdc
