#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <json.hpp>
#include <vector>

#include "hvdc/models.hpp"
#include "hvdc/quadratic.hpp"

namespace hvdc {

enum class SolveStatus { Verified, NoConvergence, SingularJacobian, VoltageCollapse };

std::string to_string(SolveStatus s);

/// A solved (or failed) operating point of the reduced model.
struct Equilibrium {
    SolveStatus status = SolveStatus::NoConvergence;
    Eigen::VectorXd v_star;    // stacked voltages, length p+v
    Eigen::VectorXd i_T_star;  // steady-state line currents (empty until attached)
    Eigen::VectorXd P_DC;      // injected powers at the V nodes
    double residual_inf = 0.0;  // max equilibrium-equation residual (W)
    int iterations = 0;

    [[nodiscard]] bool verified() const { return status == SolveStatus::Verified; }
};

struct SolveOptions {
    int max_iters = 100;
    double eps_eq = -1.0;       // <0: 1e-8 * model power scale
    double v_floor_frac = 0.05;  // fraction of v_nom below which the CPD law is off-limits
};

/// Magnitude of the equation constants: sets absolute tolerances for both
/// the solver and the verification bar.
double power_scale(const ReducedModel& model);

/// Damped Newton iteration on the equilibrium quadratics, with step halving
/// keeping every voltage above the floor. Failure is data, not an exception:
/// inspect status.
Equilibrium solve_equilibrium(const ReducedModel& model, const Eigen::VectorXd& v0,
                              const SolveOptions& opts = {});

/// Steady-state line currents from the voltages (the lines' algebraic
/// elimination).
Eigen::VectorXd line_currents(const FullModel& model, const Eigen::VectorXd& v_star);

/// Fills i_T_star of a solved equilibrium from the full model's line data.
void attach_line_currents(Equilibrium& eq, const FullModel& model);

struct MultistartOptions {
    int n_starts = 16;
    double spread = 0.6;  // starts drawn from v_nom * [1-spread, 1+spread]
    std::uint64_t seed = 0;
    SolveOptions solve;
};

/// Newton from randomized starts (first start: v_nom * 1). Returns verified,
/// deduplicated equilibria sorted by descending minimum voltage, so the
/// high-voltage branch comes first. May be empty; no exhaustiveness claim.
std::vector<Equilibrium> multistart_solve(const ReducedModel& model,
                                          const MultistartOptions& opts = {});

struct PowerSharingCheck {
    bool holds = false;
    Eigen::VectorXd residual;  // gamma_k * P_DC,k(v*) - 1
};

/// Definition check: does the equilibrium share power proportionally to the
/// weights gamma (gamma_k P_DC,k = 1)?
PowerSharingCheck check_power_sharing(const Equilibrium& eq, const ReducedModel& model,
                                      const Eigen::VectorXd& gamma, double tol_ps = 1e-6);

/// Conservation audit: injected reference + controlled powers minus shunt
/// and line losses; approximately zero at any true equilibrium (W).
double power_balance_residual(const Equilibrium& eq, const FullModel& model);

nlohmann::json equilibrium_to_json(const Equilibrium& eq);

}  // namespace hvdc
