#include "hvdc/quadratic.hpp"

#include <utility>

#include "hvdc/errors.hpp"

namespace hvdc {

std::string to_string(MultiplierTag tag) {
    switch (tag) {
        case MultiplierTag::T_P: return "T_P";
        case MultiplierTag::T_V: return "T_V";
        case MultiplierTag::T_Vps: return "T_Vps";
    }
    return "T_P";
}

MultiplierTag multiplier_tag_from_string(const std::string& s) {
    if (s == "T_P") return MultiplierTag::T_P;
    if (s == "T_V") return MultiplierTag::T_V;
    if (s == "T_Vps") return MultiplierTag::T_Vps;
    throw Error(ErrorCode::ParseError, "unknown multiplier tag: " + s);
}

Eigen::VectorXd QuadraticSystem::residuals(const Eigen::VectorXd& x) const {
    if (x.size() != dimension) {
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match system");
    }
    Eigen::VectorXd r(size());
    for (int i = 0; i < size(); ++i) {
        const QuadraticEquation& eq = equations[static_cast<std::size_t>(i)];
        r(i) = 0.5 * x.dot(eq.A * x) + x.dot(eq.B) - eq.c;
    }
    return r;
}

QuadraticSystem make_system(int dimension) {
    if (dimension < 1) {
        throw Error(ErrorCode::DimensionMismatch, "system dimension must be at least 1");
    }
    QuadraticSystem sys;
    sys.dimension = dimension;
    return sys;
}

Eigen::MatrixXd system_jacobian(const QuadraticSystem& sys, const Eigen::VectorXd& x) {
    if (x.size() != sys.dimension) {
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match system");
    }
    Eigen::MatrixXd jac(sys.size(), sys.dimension);
    for (int i = 0; i < sys.size(); ++i) {
        const QuadraticEquation& eq = sys.equations[static_cast<std::size_t>(i)];
        jac.row(i) = (eq.A * x + eq.B).transpose();
    }
    return jac;
}

void add_equation(QuadraticSystem& sys, Eigen::MatrixXd A, Eigen::VectorXd B, double c,
                  MultiplierTag tag, std::string label) {
    const int n = sys.dimension;
    if (A.rows() != n || A.cols() != n || B.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "equation blocks do not match dimension " +
                                                      std::to_string(n));
    }
    const double scale = A.cwiseAbs().maxCoeff();
    const double asym = (A - A.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * (1.0 + scale)) {
        throw Error(ErrorCode::InvalidSpec, "quadratic coefficient matrix is not symmetric");
    }
    // Bitwise-symmetric storage: (a_ij + a_ji)/2 evaluates identically for
    // both triangles.
    Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
    sys.equations.push_back({std::move(sym), std::move(B), c, tag, std::move(label)});
}

QuadraticSystem concatenate(const QuadraticSystem& a, const QuadraticSystem& b) {
    if (a.dimension != b.dimension) {
        throw Error(ErrorCode::DimensionMismatch, "cannot concatenate systems of dimensions " +
                                                      std::to_string(a.dimension) + " and " +
                                                      std::to_string(b.dimension));
    }
    QuadraticSystem out = a;
    out.equations.insert(out.equations.end(), b.equations.begin(), b.equations.end());
    return out;
}

MultiplierVector zero_multipliers(const QuadraticSystem& sys) {
    MultiplierVector mv;
    mv.t = Eigen::VectorXd::Zero(sys.size());
    mv.tags.reserve(sys.equations.size());
    for (const auto& eq : sys.equations) mv.tags.push_back(eq.tag);
    return mv;
}

Eigen::MatrixXd assemble_upsilon(const QuadraticSystem& sys, const Eigen::VectorXd& t) {
    if (t.size() != sys.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "multiplier count " + std::to_string(t.size()) + " does not match " +
                        std::to_string(sys.size()) + " equations");
    }
    const int n = sys.dimension;
    Eigen::MatrixXd top = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd side = Eigen::VectorXd::Zero(n);
    double corner = 0.0;
    for (int i = 0; i < sys.size(); ++i) {
        const QuadraticEquation& eq = sys.equations[static_cast<std::size_t>(i)];
        top.noalias() += t(i) * eq.A;
        side.noalias() += t(i) * eq.B;
        corner -= 2.0 * t(i) * eq.c;
    }
    Eigen::MatrixXd upsilon(n + 1, n + 1);
    upsilon.topLeftCorner(n, n) = top;
    upsilon.topRightCorner(n, 1) = side;
    upsilon.bottomLeftCorner(1, n) = side.transpose();
    upsilon(n, n) = corner;
    return upsilon;
}

Eigen::MatrixXd assemble_upsilon(const QuadraticSystem& sys, const MultiplierVector& t) {
    return assemble_upsilon(sys, t.t);
}

nlohmann::json system_to_json(const QuadraticSystem& sys) {
    nlohmann::json doc;
    doc["dimension"] = sys.dimension;
    doc["equations"] = nlohmann::json::array();
    for (const auto& eq : sys.equations) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < eq.A.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < eq.A.cols(); ++c) row.push_back(eq.A(r, c));
            rows.push_back(std::move(row));
        }
        nlohmann::json b = nlohmann::json::array();
        for (int r = 0; r < eq.B.size(); ++r) b.push_back(eq.B(r));
        doc["equations"].push_back({{"A", std::move(rows)},
                                    {"B", std::move(b)},
                                    {"c", eq.c},
                                    {"tag", to_string(eq.tag)},
                                    {"label", eq.label}});
    }
    return doc;
}

QuadraticSystem system_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("equations")) {
        throw Error(ErrorCode::ParseError, "quadratic system document must carry dimension and equations");
    }
    QuadraticSystem sys = make_system(doc["dimension"].get<int>());
    const int n = sys.dimension;
    for (const auto& entry : doc["equations"]) {
        Eigen::MatrixXd a(n, n);
        const auto& rows = entry.at("A");
        if (static_cast<int>(rows.size()) != n) {
            throw Error(ErrorCode::ParseError, "matrix row count mismatch");
        }
        for (int r = 0; r < n; ++r) {
            const auto& row = rows[static_cast<std::size_t>(r)];
            if (static_cast<int>(row.size()) != n) {
                throw Error(ErrorCode::ParseError, "matrix column count mismatch");
            }
            for (int c = 0; c < n; ++c) a(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
        Eigen::VectorXd b(n);
        const auto& bj = entry.at("B");
        if (static_cast<int>(bj.size()) != n) {
            throw Error(ErrorCode::ParseError, "vector length mismatch");
        }
        for (int r = 0; r < n; ++r) b(r) = bj[static_cast<std::size_t>(r)].get<double>();
        const MultiplierTag tag = entry.contains("tag")
                                      ? multiplier_tag_from_string(entry["tag"].get<std::string>())
                                      : MultiplierTag::T_P;
        const std::string label = entry.contains("label") ? entry["label"].get<std::string>() : "";
        add_equation(sys, std::move(a), std::move(b), entry.at("c").get<double>(), tag, label);
    }
    return sys;
}

}  // namespace hvdc
