#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hvdc/grid_spec.hpp"
#include "hvdc/incidence.hpp"

namespace hvdc {

/// Short-line model of the grid: capacitor voltages only, lines collapsed
/// into the Laplacian blocks. Immutable after assembly.
struct ReducedModel {
    int n_pq = 0;
    int n_vc = 0;

    Eigen::MatrixXd L_P, L_m, L_V;      // Laplacian blocks (S)
    Eigen::VectorXd G_P, G_V;           // unit shunt conductances (S), diagonal
    Eigen::VectorXd G_Z;                // ZIP impedance part, diag{-mu_Z} (S)
    Eigen::MatrixXd R_P;                // L_P + G_P
    Eigen::MatrixXd R_V;                // L_V + G_V + G_Z
    Eigen::VectorXd u_bar_V;            // constant current sources col(mu_I) (A)
    Eigen::VectorXd P_P_ref;            // PQ power references (W)
    Eigen::VectorXd P_V_ref;            // col(P_k + mu_P,k) (W)
    Eigen::VectorXd C_P, C_V;           // capacitances (F), diagonal
    double v_nom = 0.0;

    std::vector<std::string> pq_ids, vc_ids;

    [[nodiscard]] int dim() const { return n_pq + n_vc; }

    /// Coupling matrix M = [R_P, L_m; L_m^T, R_V] of the steady-state map.
    [[nodiscard]] Eigen::MatrixXd coupling() const;

    /// col(P_P_ref, P_V_ref).
    [[nodiscard]] Eigen::VectorXd power_ref_stack() const;

    /// col(0, u_bar_V).
    [[nodiscard]] Eigen::VectorXd source_stack() const;

    /// col(C_P, C_V).
    [[nodiscard]] Eigen::VectorXd capacitance_stack() const;

    /// Injected dc power of each voltage-controlled unit at the given
    /// V-block voltages: P_DC,k = P_V_ref,k + mu_I,k v + mu_Z,k v^2.
    [[nodiscard]] Eigen::VectorXd injected_powers(const Eigen::VectorXd& v_vc) const;
};

/// Interconnected model with explicit RL line dynamics. State layout:
/// (v_P, v_V, i_T), dimension p + v + t.
struct FullModel {
    ReducedModel reduced;
    Eigen::VectorXd R_T;  // line resistances (Ohm), diagonal
    Eigen::VectorXd L_T;  // line inductances (H), diagonal
    Eigen::MatrixXd B_P;  // p x t incidence block
    Eigen::MatrixXd B_V;  // v x t incidence block
    std::vector<std::string> line_labels;

    [[nodiscard]] int n_lines() const { return static_cast<int>(R_T.size()); }
    [[nodiscard]] int dim() const { return reduced.dim() + n_lines(); }

    /// Names of the state entries: unit ids, then "iT_<label>" per line.
    [[nodiscard]] std::vector<std::string> state_names() const;
};

/// Assembles the short-line model from a validated spec.
ReducedModel assemble_reduced(const GridSpec& spec);

/// Assembles the interconnected model (capacitors + inductive lines).
FullModel assemble_full(const GridSpec& spec);

}  // namespace hvdc
