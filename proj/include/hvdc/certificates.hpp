#pragma once

#include <Eigen/Dense>

#include "hvdc/models.hpp"
#include "hvdc/quadratic.hpp"

namespace hvdc {

/// Equilibrium constraints as quadratics over the stacked voltage vector
/// x = col(v_P, v_V): one equation per node,
///   A_i = e_i e_i^T M + M^T e_i e_i^T,  M = [R_P, L_m; L_m^T, R_V],
///   B_i = -e_i * (i-th entry of col(0, u_bar_V)),
///   c_i = i-th entry of col(P_P_ref, P_V_ref).
/// A voltage vector is a steady state of the grid iff it solves the system.
QuadraticSystem equilibrium_quadratics(const ReducedModel& model);

/// Proportional power-sharing constraints gamma_k * P_DC,k(v) = 1 as
/// quadratics over the same stacked vector: for V-node k at stacked index
/// j = p + k,
///   A_k = 2 gamma_k mu_Z,k e_j e_j^T,  B_k = gamma_k u_bar_V,k e_j,
///   c_k = 1 - gamma_k P_V_ref,k.
/// gamma must be strictly positive, one entry per V node (1/W scale).
QuadraticSystem powersharing_quadratics(const ReducedModel& model,
                                        const Eigen::VectorXd& gamma);

/// Pencil of the joint non-existence test: equilibrium and power-sharing
/// equations stacked into one multiplier family. Equals assemble_upsilon on
/// the concatenated system.
Eigen::MatrixXd combined_ps_upsilon(const QuadraticSystem& eq_sys,
                                    const QuadraticSystem& ps_sys,
                                    const Eigen::VectorXd& t_eq,
                                    const Eigen::VectorXd& t_ps);

}  // namespace hvdc
