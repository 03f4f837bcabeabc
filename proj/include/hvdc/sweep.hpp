#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hvdc/grid_spec.hpp"
#include "hvdc/stability.hpp"

namespace hvdc {

/// Which control parameter of a voltage-controlled unit an axis varies.
/// DroopD rewrites the whole ZIP triple as a droop law with gain d; the
/// others overwrite a single ZIP coefficient.
enum class SweepParam { DroopD, MuP, MuI, MuZ };

std::string to_string(SweepParam p);
SweepParam sweep_param_from_string(const std::string& name);

struct SweptParameter {
    std::string vc_unit_id;
    SweepParam param = SweepParam::DroopD;
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
};

/// Which analyses run per cell. The existence scan is the sweep's backbone
/// and always runs; the others default off and are switched on by the
/// sweep file's "analyses" list.
struct AnalysisSet {
    bool powersharing_lmi = false;
    bool newton = false;
    bool stability = false;
};

struct SweepSpec {
    std::vector<SweptParameter> parameters;  // 1 or 2 axes
    AnalysisSet analyses;
    std::optional<Eigen::VectorXd> gamma;  // sharing weights; all-ones when absent
    std::uint64_t seed = 0;
};

/// Parses and validates a sweep description; throws Error on violations
/// (axis count, steps >= 2, min < max, unknown fields or names).
SweepSpec sweep_from_json(const nlohmann::json& doc);
SweepSpec load_sweep(const std::string& path);

enum class LmiRegion { Feasible, NotFound, Skipped };
enum class NewtonRegion { Found, None, Skipped };
enum class StabilityRegion { Stable, Unstable, Inconclusive, Skipped };

std::string to_string(LmiRegion r);
std::string to_string(NewtonRegion r);
std::string to_string(StabilityRegion r);

LmiRegion lmi_region_from_string(const std::string& name);
NewtonRegion newton_region_from_string(const std::string& name);
StabilityRegion stability_region_from_string(const std::string& name);

struct RegionCell {
    std::vector<double> values;  // one per swept axis
    LmiRegion lmi_existence = LmiRegion::NotFound;
    LmiRegion lmi_powersharing = LmiRegion::Skipped;
    NewtonRegion newton = NewtonRegion::Skipped;
    StabilityRegion stability = StabilityRegion::Skipped;
    // Soundness: a certificate proves non-existence, so it must never
    // coincide with a found equilibrium.
    bool consistency_flag = false;
};

struct SweepResult {
    std::vector<std::string> axis_names;  // "unit:param" labels
    std::vector<std::vector<double>> axis_values;
    std::vector<RegionCell> cells;  // row-major, first axis outermost
    int violations = 0;             // number of raised consistency flags

    [[nodiscard]] std::size_t expected_cells() const {
        std::size_t n = 1;
        for (const auto& axis : axis_values) n *= axis.size();
        return n;
    }
};

/// Per-cell work budgets. The defaults balance region fidelity against the
/// cost of scanning thousands of cells on one core.
struct SweepOptions {
    int lmi_restarts = 6;
    int lmi_max_iters = 1500;
    int newton_starts = 12;
    JacobianVariant jacobian = JacobianVariant::Derived;
    /// Worker threads for the cell pool; 0 picks the hardware concurrency.
    /// Results are identical for any pool size: cells are independent work
    /// items gathered in grid order.
    int threads = 0;
};

/// Evaluates every cell of the (1D or 2D) parameter grid: non-existence
/// certificate search, then optionally the power-sharing variant (warm
/// started from the existence certificate), the equilibrium solver, and
/// the stability verdict of the best found equilibrium. Deterministic for
/// a fixed spec seed: every cell derives its own RNG stream.
SweepResult run_sweep(const GridSpec& grid, const SweepSpec& spec,
                      const SweepOptions& opts = {});

/// CSV layout: "# axis,<name>,<steps>,<min>,<max>" comments, a header row,
/// one row per cell, then "# summary,..." lines with region counts, a
/// connected-components count per existence verdict, and the violation
/// count. Numbers print with 17 significant digits so a read-back is exact.
void write_region_csv(const SweepResult& result, std::ostream& out);

/// Parses the CSV emitted by write_region_csv (exact round trip).
SweepResult read_region_csv(std::istream& in);

/// Connected components (4-neighborhood) among cells with the given
/// existence verdict.
int count_components(const SweepResult& result, LmiRegion verdict);

}  // namespace hvdc
