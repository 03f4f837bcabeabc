#include "hvdc/stability.hpp"

#include "hvdc/errors.hpp"

namespace hvdc {

std::string to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::AsymptoticallyStable: return "ASYMPTOTICALLY_STABLE";
        case StabilityClass::Unstable: return "UNSTABLE";
        case StabilityClass::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

Eigen::MatrixXd build_jacobian(const FullModel& model, const Eigen::VectorXd& v_star,
                               JacobianVariant variant) {
    const ReducedModel& red = model.reduced;
    const int p = red.n_pq, v = red.n_vc, t = model.n_lines();
    if (v_star.size() != p + v) {
        throw Error(ErrorCode::DimensionMismatch, "voltage vector does not match model");
    }
    if (v_star.minCoeff() <= 0.0) {
        throw Error(ErrorCode::NonpositiveVoltage,
                    "linearization point must have positive voltages");
    }

    const Eigen::VectorXd g_p_star =
        red.P_P_ref.cwiseQuotient(v_star.head(p).cwiseAbs2());
    const Eigen::VectorXd g_v_star =
        red.P_V_ref.cwiseQuotient(v_star.tail(v).cwiseAbs2());

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(p + v + t, p + v + t);
    const Eigen::VectorXd c_p_inv = red.C_P.cwiseInverse();
    const Eigen::VectorXd c_v_inv = red.C_V.cwiseInverse();
    const Eigen::VectorXd l_t_inv = model.L_T.cwiseInverse();

    jac.topLeftCorner(p, p).diagonal() = -c_p_inv.cwiseProduct(red.G_P + g_p_star);
    jac.block(0, p + v, p, t) = c_p_inv.asDiagonal() * (-model.B_P);

    Eigen::VectorXd shunt_v = red.G_V + g_v_star;
    if (variant == JacobianVariant::Derived) shunt_v += red.G_Z;
    jac.block(p, p, v, v).diagonal() = -c_v_inv.cwiseProduct(shunt_v);
    jac.block(p, p + v, v, t) = c_v_inv.asDiagonal() * (-model.B_V);

    jac.block(p + v, 0, t, p) = l_t_inv.asDiagonal() * model.B_P.transpose();
    jac.block(p + v, p, t, v) = l_t_inv.asDiagonal() * model.B_V.transpose();
    jac.bottomRightCorner(t, t).diagonal() = -l_t_inv.cwiseProduct(model.R_T);
    return jac;
}

StabilityReport classify(const FullModel& model, const Eigen::VectorXd& v_star,
                         double tol_eig, JacobianVariant variant) {
    const Eigen::MatrixXd jac = build_jacobian(model, v_star, variant);
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(jac);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::EigensolveFailure, "nonsymmetric eigensolve did not converge");
    }

    StabilityReport report;
    report.eigenvalues = solver.eigenvalues();
    report.margin = report.eigenvalues.real().maxCoeff();
    const double radius = report.eigenvalues.cwiseAbs().maxCoeff();
    report.tol = tol_eig >= 0.0 ? tol_eig : 1e-9 * (1.0 + radius);
    if (report.margin < -report.tol) {
        report.classification = StabilityClass::AsymptoticallyStable;
    } else if (report.margin > report.tol) {
        report.classification = StabilityClass::Unstable;
    } else {
        report.classification = StabilityClass::Inconclusive;
    }

    const ReducedModel& red = model.reduced;
    report.G_P_star = red.P_P_ref.cwiseQuotient(v_star.head(red.n_pq).cwiseAbs2());
    report.G_V_star = red.P_V_ref.cwiseQuotient(v_star.tail(red.n_vc).cwiseAbs2());
    return report;
}

nlohmann::json stability_to_json(const StabilityReport& report) {
    nlohmann::json doc;
    doc["classification"] = to_string(report.classification);
    doc["margin"] = report.margin;
    doc["tol"] = report.tol;
    doc["eigenvalues"] = nlohmann::json::array();
    for (int i = 0; i < report.eigenvalues.size(); ++i) {
        doc["eigenvalues"].push_back({{"re", report.eigenvalues(i).real()},
                                      {"im", report.eigenvalues(i).imag()}});
    }
    return doc;
}

}  // namespace hvdc
