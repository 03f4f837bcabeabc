#include "hvdc/certificates.hpp"

#include "hvdc/errors.hpp"

namespace hvdc {

QuadraticSystem equilibrium_quadratics(const ReducedModel& model) {
    const int n = model.dim();
    const Eigen::MatrixXd m = model.coupling();
    const Eigen::VectorXd u = model.source_stack();
    const Eigen::VectorXd c = model.power_ref_stack();

    QuadraticSystem sys = make_system(n);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        a.row(i) += m.row(i);
        a.col(i) += m.row(i).transpose();
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        b(i) = -u(i);
        const bool is_pq = i < model.n_pq;
        const std::string label =
            is_pq ? model.pq_ids[static_cast<std::size_t>(i)]
                  : model.vc_ids[static_cast<std::size_t>(i - model.n_pq)];
        add_equation(sys, std::move(a), std::move(b), c(i),
                     is_pq ? MultiplierTag::T_P : MultiplierTag::T_V, label);
    }
    return sys;
}

QuadraticSystem powersharing_quadratics(const ReducedModel& model,
                                        const Eigen::VectorXd& gamma) {
    if (gamma.size() != model.n_vc) {
        throw Error(ErrorCode::DimensionMismatch,
                    "gamma needs one entry per voltage-controlled unit");
    }
    if (model.n_vc > 0 && gamma.minCoeff() <= 0.0) {
        throw Error(ErrorCode::NonpositiveGamma, "sharing weights must be strictly positive");
    }

    const int n = model.dim();
    QuadraticSystem sys = make_system(n);
    for (int k = 0; k < model.n_vc; ++k) {
        const int j = model.n_pq + k;
        const double mu_z = -model.G_Z(k);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        a(j, j) = 2.0 * gamma(k) * mu_z;
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        b(j) = gamma(k) * model.u_bar_V(k);
        const double c = 1.0 - gamma(k) * model.P_V_ref(k);
        add_equation(sys, std::move(a), std::move(b), c, MultiplierTag::T_Vps,
                     model.vc_ids[static_cast<std::size_t>(k)]);
    }
    return sys;
}

Eigen::MatrixXd combined_ps_upsilon(const QuadraticSystem& eq_sys,
                                    const QuadraticSystem& ps_sys,
                                    const Eigen::VectorXd& t_eq,
                                    const Eigen::VectorXd& t_ps) {
    if (t_eq.size() != eq_sys.size() || t_ps.size() != ps_sys.size()) {
        throw Error(ErrorCode::DimensionMismatch, "multiplier blocks do not match the systems");
    }
    const QuadraticSystem joint = concatenate(eq_sys, ps_sys);
    Eigen::VectorXd t(t_eq.size() + t_ps.size());
    t << t_eq, t_ps;
    return assemble_upsilon(joint, t);
}

}  // namespace hvdc
