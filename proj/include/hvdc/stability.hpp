#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include "hvdc/models.hpp"

namespace hvdc {

/// Which (2,2) capacitor block the linearization uses. Derived keeps the
/// ZIP impedance shunt G_Z next to G_V, matching the nonlinear field's
/// derivative; Paper drops G_Z there, reproducing the printed linearization
/// for side-by-side study.
enum class JacobianVariant { Derived, Paper };

enum class StabilityClass { AsymptoticallyStable, Unstable, Inconclusive };

std::string to_string(StabilityClass c);

struct StabilityReport {
    Eigen::VectorXcd eigenvalues;  // of the full-model Jacobian (1/s)
    StabilityClass classification = StabilityClass::Inconclusive;
    double margin = 0.0;  // max real part
    double tol = 0.0;     // classification dead band around zero
    Eigen::VectorXd G_P_star, G_V_star;  // CPD linearization shunts (S)
};

/// Jacobian of the full interconnected model at the voltages v_star
/// (dimension p+v+t), with the constant power devices linearized into the
/// shunts G* = diag{P_ref / v*^2}.
Eigen::MatrixXd build_jacobian(const FullModel& model, const Eigen::VectorXd& v_star,
                               JacobianVariant variant = JacobianVariant::Derived);

/// Dense eigensolve of the Jacobian plus first-method classification:
/// stable when every real part clears -tol, unstable when one exceeds +tol,
/// inconclusive in the dead band (tol < 0: 1e-9 * (1 + spectral radius)).
StabilityReport classify(const FullModel& model, const Eigen::VectorXd& v_star,
                         double tol_eig = -1.0,
                         JacobianVariant variant = JacobianVariant::Derived);

nlohmann::json stability_to_json(const StabilityReport& report);

}  // namespace hvdc
