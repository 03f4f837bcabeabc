#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

namespace hvdc {

/// Origin of a multiplier/equation, used for block-tagged reporting:
/// constant-power nodes, voltage-controlled nodes, power-sharing constraints.
enum class MultiplierTag { T_P, T_V, T_Vps };

std::string to_string(MultiplierTag tag);
MultiplierTag multiplier_tag_from_string(const std::string& s);

/// One quadratic constraint f(x) = 1/2 x^T A x + x^T B = c over R^n.
struct QuadraticEquation {
    Eigen::MatrixXd A;  // n x n, symmetric
    Eigen::VectorXd B;  // n
    double c = 0.0;
    MultiplierTag tag = MultiplierTag::T_P;
    std::string label;  // originating unit id, when applicable
};

/// A finite list of quadratic equations sharing one dimension. Construction
/// goes through make_system/add_equation, which symmetrize each A (rejecting
/// asymmetry beyond 1e-9 relative) and enforce consistent dimensions.
struct QuadraticSystem {
    int dimension = 0;
    std::vector<QuadraticEquation> equations;

    [[nodiscard]] int size() const { return static_cast<int>(equations.size()); }

    /// Residual vector f_i(x) - c_i for all equations.
    [[nodiscard]] Eigen::VectorXd residuals(const Eigen::VectorXd& x) const;
};

QuadraticSystem make_system(int dimension);

/// Jacobian of the residual map x -> (f_i(x) - c_i)_i: row i = (A_i x + B_i)^T.
Eigen::MatrixXd system_jacobian(const QuadraticSystem& sys, const Eigen::VectorXd& x);

/// Symmetrizes A and appends the equation; throws on dimension mismatch or
/// when A is asymmetric beyond 1e-9 (relative to its magnitude).
void add_equation(QuadraticSystem& sys, Eigen::MatrixXd A, Eigen::VectorXd B, double c,
                  MultiplierTag tag = MultiplierTag::T_P, std::string label = {});

/// Appends all equations of b to a copy of a (dimensions must agree).
QuadraticSystem concatenate(const QuadraticSystem& a, const QuadraticSystem& b);

/// One multiplier per equation of the target system, carrying the block tags
/// for reporting.
struct MultiplierVector {
    Eigen::VectorXd t;
    std::vector<MultiplierTag> tags;  // same length as t
};

/// Zero multipliers shaped and tagged after the system's equations.
MultiplierVector zero_multipliers(const QuadraticSystem& sys);

/// The (n+1)x(n+1) pencil
///   Upsilon(t) = [ sum t_i A_i        sum t_i B_i   ]
///                [ (sum t_i B_i)^T   -2 sum t_i c_i ]
/// linear in t and exactly symmetric by construction. Positive definiteness
/// of Upsilon(t) certifies that no x solves all equations simultaneously.
Eigen::MatrixXd assemble_upsilon(const QuadraticSystem& sys, const Eigen::VectorXd& t);
Eigen::MatrixXd assemble_upsilon(const QuadraticSystem& sys, const MultiplierVector& t);

nlohmann::json system_to_json(const QuadraticSystem& sys);
QuadraticSystem system_from_json(const nlohmann::json& doc);

}  // namespace hvdc
