#include "hvdc/incidence.hpp"

#include <algorithm>

#include "hvdc/errors.hpp"

namespace hvdc {

int NodeOrdering::index_of(const std::string& id) const {
    auto it = std::lower_bound(pq_ids.begin(), pq_ids.end(), id);
    if (it != pq_ids.end() && *it == id) return static_cast<int>(it - pq_ids.begin());
    it = std::lower_bound(vc_ids.begin(), vc_ids.end(), id);
    if (it != vc_ids.end() && *it == id) return static_cast<int>(pq_ids.size() + (it - vc_ids.begin()));
    return -1;
}

NodeOrdering node_ordering(const GridSpec& spec) {
    NodeOrdering ordering;
    ordering.pq_ids.reserve(spec.pq_units.size());
    for (const auto& u : spec.pq_units) ordering.pq_ids.push_back(u.id);
    std::sort(ordering.pq_ids.begin(), ordering.pq_ids.end());
    ordering.vc_ids.reserve(spec.vc_units.size());
    for (const auto& u : spec.vc_units) ordering.vc_ids.push_back(u.id);
    std::sort(ordering.vc_ids.begin(), ordering.vc_ids.end());
    return ordering;
}

Eigen::MatrixXd IncidenceMatrix::B_P() const {
    return B.block(0, n_pq + n_vc, n_pq, n_lines);
}

Eigen::MatrixXd IncidenceMatrix::B_V() const {
    return B.block(n_pq, n_pq + n_vc, n_vc, n_lines);
}

IncidenceMatrix build_incidence(const GridSpec& spec) {
    require_valid(spec);

    IncidenceMatrix inc;
    inc.ordering = node_ordering(spec);
    inc.n_pq = spec.n_pq();
    inc.n_vc = spec.n_vc();
    inc.n_lines = spec.n_lines();

    const int c = inc.n_pq + inc.n_vc;
    const int t = inc.n_lines;
    inc.B = Eigen::MatrixXd::Zero(c + 1, c + t);

    // Converter edge columns: identity on the node rows, -1 on the ground row.
    for (int i = 0; i < c; ++i) {
        inc.B(i, i) = 1.0;
        inc.B(c, i) = -1.0;
    }

    // Line columns, in input order, oriented +1 at the lexicographically
    // smaller endpoint id.
    inc.line_labels.reserve(static_cast<std::size_t>(t));
    inc.line_endpoints.reserve(static_cast<std::size_t>(t));
    for (int e = 0; e < t; ++e) {
        const Line& line = spec.lines[static_cast<std::size_t>(e)];
        std::string plus_id = line.from_id;
        std::string minus_id = line.to_id;
        if (minus_id < plus_id) std::swap(plus_id, minus_id);
        const int plus = inc.ordering.index_of(plus_id);
        const int minus = inc.ordering.index_of(minus_id);
        inc.B(plus, c + e) = 1.0;
        inc.B(minus, c + e) = -1.0;
        inc.line_labels.push_back(plus_id + "-" + minus_id);
        inc.line_endpoints.emplace_back(plus, minus);
    }

    return inc;
}

Eigen::MatrixXd LaplacianBlocks::combined() const {
    const Eigen::Index p = L_P.rows();
    const Eigen::Index v = L_V.rows();
    Eigen::MatrixXd full(p + v, p + v);
    full.topLeftCorner(p, p) = L_P;
    full.topRightCorner(p, v) = L_m;
    full.bottomLeftCorner(v, p) = L_m.transpose();
    full.bottomRightCorner(v, v) = L_V;
    return full;
}

LaplacianBlocks build_laplacian_blocks(const GridSpec& spec) {
    IncidenceMatrix inc = build_incidence(spec);

    Eigen::VectorXd line_conductance(inc.n_lines);
    for (int e = 0; e < inc.n_lines; ++e) {
        line_conductance(e) = 1.0 / spec.lines[static_cast<std::size_t>(e)].resistance;
    }

    const Eigen::MatrixXd bp = inc.B_P();
    const Eigen::MatrixXd bv = inc.B_V();
    LaplacianBlocks blocks;
    blocks.L_P = bp * line_conductance.asDiagonal() * bp.transpose();
    blocks.L_m = bp * line_conductance.asDiagonal() * bv.transpose();
    blocks.L_V = bv * line_conductance.asDiagonal() * bv.transpose();
    return blocks;
}

}  // namespace hvdc
