#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <json.hpp>
#include <optional>

#include "hvdc/grid_spec.hpp"
#include "hvdc/stability.hpp"

namespace hvdc {

/// Knobs for the consolidated single-grid analysis.
struct AnalyzeOptions {
    std::uint64_t seed = 0;
    /// Sharing weights (one per voltage-controlled unit); switches the
    /// power-sharing certificate search and per-equilibrium checks on.
    std::optional<Eigen::VectorXd> gamma;
    JacobianVariant jacobian = JacobianVariant::Derived;
    int lmi_restarts = 24;
    int lmi_max_iters = 3000;
    int newton_starts = 24;
};

/// One-stop report over a single grid: validation, model dimensions, the
/// non-existence certificate search, the multistart equilibrium solve with
/// per-equilibrium stability (plus power-sharing checks when gamma is set),
/// and the soundness cross-check between the two routes. When validation
/// fails the report still comes back, with "validation.ok" false and every
/// analysis section omitted.
nlohmann::json analyze_grid(const GridSpec& grid, const AnalyzeOptions& opts = {});

}  // namespace hvdc
