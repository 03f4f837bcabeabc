#include "hvdc/analysis.hpp"

#include "hvdc/certificates.hpp"
#include "hvdc/equilibrium.hpp"
#include "hvdc/errors.hpp"
#include "hvdc/feasibility.hpp"
#include "hvdc/models.hpp"
#include "hvdc/rand_util.hpp"

namespace hvdc {

namespace {

using nlohmann::json;

json violations_to_json(const std::vector<Violation>& violations) {
    json arr = json::array();
    for (const auto& v : violations) {
        arr.push_back({{"code", v.code},
                       {"severity", v.severity == Severity::Error ? "error" : "warning"},
                       {"subject", v.subject},
                       {"detail", v.detail}});
    }
    return arr;
}

}  // namespace

json analyze_grid(const GridSpec& grid, const AnalyzeOptions& opts) {
    json report;
    report["grid"] = {{"n_pq", grid.n_pq()},
                      {"n_vc", grid.n_vc()},
                      {"n_lines", grid.n_lines()},
                      {"v_nom", grid.v_nom},
                      {"per_unit", grid.per_unit.has_value()}};

    const std::vector<Violation> violations = validate(grid);
    report["validation"] = {{"ok", is_valid(violations)},
                            {"violations", violations_to_json(violations)}};
    if (!is_valid(violations)) return report;

    const FullModel model = assemble_full(grid);
    const QuadraticSystem eq_sys = equilibrium_quadratics(model.reduced);

    CertificateOptions copts;
    copts.restarts = opts.lmi_restarts;
    copts.max_iters = opts.lmi_max_iters;
    copts.seed = derive_seed(opts.seed, 0);
    const CertificateOutcome existence = find_certificate(eq_sys, copts);
    report["existence_lmi"] = certificate_to_json(existence);

    Eigen::VectorXd gamma;
    if (opts.gamma) {
        gamma = *opts.gamma;
        if (gamma.size() != grid.n_vc()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "gamma needs one entry per voltage-controlled unit");
        }
        if (gamma.minCoeff() <= 0.0) {
            throw Error(ErrorCode::NonpositiveGamma, "sharing weights must be positive");
        }
        const QuadraticSystem combined =
            concatenate(eq_sys, powersharing_quadratics(model.reduced, gamma));
        CertificateOptions ps_opts = copts;
        ps_opts.seed = derive_seed(opts.seed, 1);
        if (existence.verdict == CertificateVerdict::CertificateFound) {
            Eigen::VectorXd warm = Eigen::VectorXd::Zero(combined.size());
            warm.head(eq_sys.size()) = existence.multipliers.t;
            ps_opts.warm_start = std::move(warm);
        }
        report["powersharing_lmi"] = certificate_to_json(find_certificate(combined, ps_opts));
        report["gamma"] = std::vector<double>(gamma.data(), gamma.data() + gamma.size());
    }

    MultistartOptions ms;
    ms.n_starts = opts.newton_starts;
    ms.seed = derive_seed(opts.seed, 2);
    const std::vector<Equilibrium> equilibria = multistart_solve(model.reduced, ms);
    report["newton"] = equilibria.empty() ? "NONE" : "FOUND";

    json eq_list = json::array();
    for (const auto& eq : equilibria) {
        json entry = equilibrium_to_json(eq);
        entry["power_balance_residual"] = power_balance_residual(eq, model);
        if (opts.gamma) {
            const PowerSharingCheck ps = check_power_sharing(eq, model.reduced, gamma);
            entry["power_sharing"] = {
                {"holds", ps.holds},
                {"residual",
                 std::vector<double>(ps.residual.data(), ps.residual.data() + ps.residual.size())}};
        }
        entry["stability"] =
            stability_to_json(classify(model, eq.v_star, -1.0, opts.jacobian));
        eq_list.push_back(std::move(entry));
    }
    report["equilibria"] = std::move(eq_list);

    report["consistency_violation"] =
        existence.verdict == CertificateVerdict::CertificateFound && !equilibria.empty();
    return report;
}

}  // namespace hvdc
