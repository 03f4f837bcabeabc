#include "hvdc/models.hpp"

#include <algorithm>
#include <unordered_map>

#include "hvdc/errors.hpp"

namespace hvdc {

Eigen::MatrixXd ReducedModel::coupling() const {
    Eigen::MatrixXd m(dim(), dim());
    m.topLeftCorner(n_pq, n_pq) = R_P;
    m.topRightCorner(n_pq, n_vc) = L_m;
    m.bottomLeftCorner(n_vc, n_pq) = L_m.transpose();
    m.bottomRightCorner(n_vc, n_vc) = R_V;
    return m;
}

Eigen::VectorXd ReducedModel::power_ref_stack() const {
    Eigen::VectorXd p(dim());
    p.head(n_pq) = P_P_ref;
    p.tail(n_vc) = P_V_ref;
    return p;
}

Eigen::VectorXd ReducedModel::source_stack() const {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(dim());
    u.tail(n_vc) = u_bar_V;
    return u;
}

Eigen::VectorXd ReducedModel::capacitance_stack() const {
    Eigen::VectorXd c(dim());
    c.head(n_pq) = C_P;
    c.tail(n_vc) = C_V;
    return c;
}

Eigen::VectorXd ReducedModel::injected_powers(const Eigen::VectorXd& v_vc) const {
    if (v_vc.size() != n_vc) {
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n_vc) + " V-block voltages");
    }
    // mu_I = u_bar_V entry, mu_Z = -G_Z entry.
    return P_V_ref.array() + u_bar_V.array() * v_vc.array() - G_Z.array() * v_vc.array().square();
}

std::vector<std::string> FullModel::state_names() const {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(dim()));
    for (const auto& id : reduced.pq_ids) names.push_back(id);
    for (const auto& id : reduced.vc_ids) names.push_back(id);
    for (const auto& label : line_labels) names.push_back("iT_" + label);
    return names;
}

namespace {

/// Unit parameters gathered in canonical (sorted) order.
struct OrderedUnits {
    Eigen::VectorXd C_P, G_P, P_P;
    Eigen::VectorXd C_V, G_V, P_V_ref, u_bar_V, G_Z;
};

OrderedUnits order_units(const GridSpec& spec, const NodeOrdering& ordering) {
    OrderedUnits u;
    const int p = spec.n_pq();
    const int v = spec.n_vc();
    u.C_P.resize(p);
    u.G_P.resize(p);
    u.P_P.resize(p);
    u.C_V.resize(v);
    u.G_V.resize(v);
    u.P_V_ref.resize(v);
    u.u_bar_V.resize(v);
    u.G_Z.resize(v);

    std::unordered_map<std::string, const PqUnit*> pq_by_id;
    for (const auto& unit : spec.pq_units) pq_by_id[unit.id] = &unit;
    std::unordered_map<std::string, const VcUnit*> vc_by_id;
    for (const auto& unit : spec.vc_units) vc_by_id[unit.id] = &unit;

    for (int j = 0; j < p; ++j) {
        const PqUnit& unit = *pq_by_id.at(ordering.pq_ids[static_cast<std::size_t>(j)]);
        u.C_P(j) = unit.capacitance;
        u.G_P(j) = unit.conductance;
        u.P_P(j) = unit.power_ref;
    }
    for (int k = 0; k < v; ++k) {
        const VcUnit& unit = *vc_by_id.at(ordering.vc_ids[static_cast<std::size_t>(k)]);
        u.C_V(k) = unit.capacitance;
        u.G_V(k) = unit.conductance;
        u.P_V_ref(k) = unit.power_ref + unit.zip.mu_P;
        u.u_bar_V(k) = unit.zip.mu_I;
        u.G_Z(k) = -unit.zip.mu_Z;
    }
    return u;
}

}  // namespace

ReducedModel assemble_reduced(const GridSpec& spec) {
    require_valid(spec);

    ReducedModel model;
    const NodeOrdering ordering = node_ordering(spec);
    const LaplacianBlocks blocks = build_laplacian_blocks(spec);
    const OrderedUnits units = order_units(spec, ordering);

    model.n_pq = spec.n_pq();
    model.n_vc = spec.n_vc();
    model.L_P = blocks.L_P;
    model.L_m = blocks.L_m;
    model.L_V = blocks.L_V;
    model.G_P = units.G_P;
    model.G_V = units.G_V;
    model.G_Z = units.G_Z;
    model.R_P = blocks.L_P;
    model.R_P.diagonal() += units.G_P;
    model.R_V = blocks.L_V;
    model.R_V.diagonal() += units.G_V + units.G_Z;
    model.u_bar_V = units.u_bar_V;
    model.P_P_ref = units.P_P;
    model.P_V_ref = units.P_V_ref;
    model.C_P = units.C_P;
    model.C_V = units.C_V;
    model.v_nom = spec.v_nom;
    model.pq_ids = ordering.pq_ids;
    model.vc_ids = ordering.vc_ids;
    return model;
}

FullModel assemble_full(const GridSpec& spec) {
    FullModel model;
    model.reduced = assemble_reduced(spec);

    const IncidenceMatrix inc = build_incidence(spec);
    model.B_P = inc.B_P();
    model.B_V = inc.B_V();
    model.line_labels = inc.line_labels;

    const int t = spec.n_lines();
    model.R_T.resize(t);
    model.L_T.resize(t);
    for (int e = 0; e < t; ++e) {
        model.R_T(e) = spec.lines[static_cast<std::size_t>(e)].resistance;
        model.L_T(e) = spec.lines[static_cast<std::size_t>(e)].inductance;
    }
    return model;
}

}  // namespace hvdc
