#include "hvdc/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "hvdc/certificates.hpp"
#include "hvdc/errors.hpp"
#include "hvdc/rand_util.hpp"

namespace hvdc {

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Verified: return "VERIFIED";
        case SolveStatus::NoConvergence: return "NO_CONVERGENCE";
        case SolveStatus::SingularJacobian: return "SINGULAR_JACOBIAN";
        case SolveStatus::VoltageCollapse: return "VOLTAGE_COLLAPSE";
    }
    return "NO_CONVERGENCE";
}

double power_scale(const ReducedModel& model) {
    double scale = model.power_ref_stack().cwiseAbs().maxCoeff();
    if (model.n_vc > 0) {
        scale = std::max(scale, model.u_bar_V.cwiseAbs().maxCoeff() * model.v_nom);
    }
    scale = std::max(scale,
                     model.coupling().cwiseAbs().maxCoeff() * model.v_nom * model.v_nom);
    return scale > 0.0 ? scale : 1.0;
}

Equilibrium solve_equilibrium(const ReducedModel& model, const Eigen::VectorXd& v0,
                              const SolveOptions& opts) {
    const int n = model.dim();
    if (v0.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "start vector does not match model dimension");
    }
    if (v0.minCoeff() <= 0.0) {
        throw Error(ErrorCode::NonpositiveVoltage, "start voltages must be strictly positive");
    }

    const QuadraticSystem sys = equilibrium_quadratics(model);
    const double eps = opts.eps_eq >= 0.0 ? opts.eps_eq : 1e-8 * power_scale(model);
    const double v_floor = opts.v_floor_frac * model.v_nom;

    Equilibrium eq;
    eq.v_star = v0;
    Eigen::VectorXd r = sys.residuals(eq.v_star);

    for (int it = 0; it < opts.max_iters; ++it) {
        eq.iterations = it;
        eq.residual_inf = r.cwiseAbs().maxCoeff();
        if (eq.residual_inf < eps) {
            eq.status = SolveStatus::Verified;
            eq.P_DC = model.injected_powers(eq.v_star.tail(model.n_vc));
            return eq;
        }

        const Eigen::MatrixXd jac = system_jacobian(sys, eq.v_star);
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac,
                                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double sv_max = svd.singularValues()(0);
        const double sv_min = svd.singularValues()(svd.singularValues().size() - 1);
        if (!(sv_min > 0.0) || sv_max / sv_min > 1e14) {
            eq.status = SolveStatus::SingularJacobian;
            return eq;
        }
        const Eigen::VectorXd dx = svd.solve(-r);

        // Backtracking: keep voltages above the floor, then require descent
        // of the squared residual norm (Armijo, factor 0.5, max 40 halvings).
        const double base = r.squaredNorm();
        double alpha = 1.0;
        int halvings = 0;
        bool accepted = false;
        Eigen::VectorXd v_next, r_next;
        while (halvings <= 40) {
            v_next = eq.v_star + alpha * dx;
            if (v_next.minCoeff() > v_floor) {
                r_next = sys.residuals(v_next);
                if (r_next.squaredNorm() <= (1.0 - 1e-4 * alpha) * base) {
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
            ++halvings;
        }
        if (!accepted) {
            // Progress is blocked. Pinned against the voltage floor means the
            // constant-power law is collapsing; otherwise plain stagnation.
            const bool pinned = (eq.v_star + dx).minCoeff() <= v_floor ||
                                eq.v_star.minCoeff() <= 1.05 * v_floor;
            eq.status = pinned ? SolveStatus::VoltageCollapse : SolveStatus::NoConvergence;
            return eq;
        }
        eq.v_star = v_next;
        r = r_next;
    }

    eq.residual_inf = r.cwiseAbs().maxCoeff();
    eq.status = SolveStatus::NoConvergence;
    return eq;
}

Eigen::VectorXd line_currents(const FullModel& model, const Eigen::VectorXd& v_star) {
    const int p = model.reduced.n_pq;
    const int v = model.reduced.n_vc;
    if (v_star.size() != p + v) {
        throw Error(ErrorCode::DimensionMismatch, "voltage vector does not match model");
    }
    const Eigen::VectorXd across =
        model.B_P.transpose() * v_star.head(p) + model.B_V.transpose() * v_star.tail(v);
    return across.cwiseQuotient(model.R_T);
}

void attach_line_currents(Equilibrium& eq, const FullModel& model) {
    eq.i_T_star = line_currents(model, eq.v_star);
}

std::vector<Equilibrium> multistart_solve(const ReducedModel& model,
                                          const MultistartOptions& opts) {
    const int n = model.dim();
    const double dedup_tol = 1e-6 * model.v_nom;
    const double lo = std::max(0.1, 1.0 - opts.spread);
    const double hi = 1.0 + opts.spread;

    std::vector<Equilibrium> found;
    SplitMix64 rng(opts.seed);
    for (int s = 0; s < std::max(1, opts.n_starts); ++s) {
        Eigen::VectorXd v0(n);
        if (s == 0) {
            v0.setConstant(model.v_nom);
        } else {
            for (int i = 0; i < n; ++i) v0(i) = model.v_nom * rng.uniform(lo, hi);
        }
        Equilibrium eq = solve_equilibrium(model, v0, opts.solve);
        if (!eq.verified()) continue;
        bool duplicate = false;
        for (const auto& other : found) {
            if ((eq.v_star - other.v_star).cwiseAbs().maxCoeff() <= dedup_tol) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) found.push_back(std::move(eq));
    }

    std::stable_sort(found.begin(), found.end(), [](const Equilibrium& a, const Equilibrium& b) {
        return a.v_star.minCoeff() > b.v_star.minCoeff();
    });
    return found;
}

PowerSharingCheck check_power_sharing(const Equilibrium& eq, const ReducedModel& model,
                                      const Eigen::VectorXd& gamma, double tol_ps) {
    if (gamma.size() != model.n_vc) {
        throw Error(ErrorCode::DimensionMismatch,
                    "gamma needs one entry per voltage-controlled unit");
    }
    if (model.n_vc > 0 && gamma.minCoeff() <= 0.0) {
        throw Error(ErrorCode::NonpositiveGamma, "sharing weights must be strictly positive");
    }
    const Eigen::VectorXd p_dc = model.injected_powers(eq.v_star.tail(model.n_vc));
    PowerSharingCheck check;
    check.residual = gamma.cwiseProduct(p_dc) - Eigen::VectorXd::Ones(model.n_vc);
    check.holds = model.n_vc == 0 || check.residual.cwiseAbs().maxCoeff() < tol_ps;
    return check;
}

double power_balance_residual(const Equilibrium& eq, const FullModel& model) {
    const ReducedModel& red = model.reduced;
    const Eigen::VectorXd v_p = eq.v_star.head(red.n_pq);
    const Eigen::VectorXd v_v = eq.v_star.tail(red.n_vc);
    const Eigen::VectorXd i_t = line_currents(model, eq.v_star);

    const double injected = red.P_P_ref.sum() + red.injected_powers(v_v).sum();
    const double shunt_loss =
        v_p.cwiseAbs2().dot(red.G_P) + v_v.cwiseAbs2().dot(red.G_V);
    const double line_loss = i_t.cwiseAbs2().dot(model.R_T);
    return injected - shunt_loss - line_loss;
}

nlohmann::json equilibrium_to_json(const Equilibrium& eq) {
    nlohmann::json doc;
    doc["status"] = to_string(eq.status);
    doc["v_star"] = nlohmann::json::array();
    for (int i = 0; i < eq.v_star.size(); ++i) doc["v_star"].push_back(eq.v_star(i));
    doc["i_T_star"] = nlohmann::json::array();
    for (int i = 0; i < eq.i_T_star.size(); ++i) doc["i_T_star"].push_back(eq.i_T_star(i));
    doc["P_DC"] = nlohmann::json::array();
    for (int i = 0; i < eq.P_DC.size(); ++i) doc["P_DC"].push_back(eq.P_DC(i));
    doc["residual_inf"] = eq.residual_inf;
    doc["iterations"] = eq.iterations;
    return doc;
}

}  // namespace hvdc
