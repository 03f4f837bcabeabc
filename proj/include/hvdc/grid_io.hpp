#pragma once

#include <string>

#include <json.hpp>

#include "hvdc/grid_spec.hpp"

namespace hvdc {

struct LoadOptions {
    /// Tolerate unknown JSON keys instead of rejecting the document.
    bool lax = false;
    /// Fail with PER_UNIT_MISSING unless the file carries a per_unit block.
    bool require_per_unit = false;
};

/// Parses a grid description from JSON. Top-level keys: "pq_units",
/// "vc_units", "lines", "v_nom" and optionally "per_unit". When a per_unit
/// block {base_power (W), base_voltage (V)} is present, every quantity is
/// normalized onto those bases on load (time stays in seconds) and the bases
/// are recorded on the returned spec.
GridSpec parse_grid(const nlohmann::json& doc, const LoadOptions& opts = {});

/// Reads and parses a grid file. Throws Error(IoError) when the file cannot
/// be read and Error(ParseError) on malformed content.
GridSpec load_grid(const std::string& path, const LoadOptions& opts = {});

/// Serializes a spec in its working units. The per_unit block is not
/// re-emitted: values of an already-normalized spec are written as-is, so
/// parse_grid(grid_to_json(s)) == s.
nlohmann::json grid_to_json(const GridSpec& spec);

void save_grid(const GridSpec& spec, const std::string& path);

}  // namespace hvdc
