#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "hvdc/grid_spec.hpp"

namespace hvdc {

/// Canonical node ordering: PQ units first, then voltage-controlled units,
/// each block sorted by id. Fixes all matrix layouts reproducibly.
struct NodeOrdering {
    std::vector<std::string> pq_ids;  // sorted
    std::vector<std::string> vc_ids;  // sorted

    [[nodiscard]] int index_of(const std::string& id) const;  // -1 if unknown
    [[nodiscard]] int size() const { return static_cast<int>(pq_ids.size() + vc_ids.size()); }
};

NodeOrdering node_ordering(const GridSpec& spec);

/// Node-edge incidence matrix of the grid graph, ground row included.
///
/// Rows: p PQ nodes, v VC nodes, ground. Columns: p + v converter edges
/// (identity blocks, -1 on the ground row), then t line edges. Line columns
/// carry +1 at the lexicographically smaller endpoint id and -1 at the other,
/// zero on the ground row.
struct IncidenceMatrix {
    Eigen::MatrixXd B;  // (c+1) x (c+t), entries in {-1, 0, +1}
    int n_pq = 0;
    int n_vc = 0;
    int n_lines = 0;
    NodeOrdering ordering;
    std::vector<std::string> line_labels;               // "<plus_id>-<minus_id>" per line column
    std::vector<std::pair<int, int>> line_endpoints;    // (plus node row, minus node row)

    /// p x t block of the line columns restricted to PQ node rows.
    [[nodiscard]] Eigen::MatrixXd B_P() const;
    /// v x t block of the line columns restricted to VC node rows.
    [[nodiscard]] Eigen::MatrixXd B_V() const;
};

/// Builds the incidence matrix from a validated spec. Throws
/// Error(InvalidSpec) when validation fails.
IncidenceMatrix build_incidence(const GridSpec& spec);

/// Conductance-weighted Laplacian of the converter-node graph, partitioned
/// by unit kind: L_P = B_P G_L B_P^T, L_m = B_P G_L B_V^T, L_V = B_V G_L B_V^T
/// with G_L the diagonal of line conductances 1/R.
struct LaplacianBlocks {
    Eigen::MatrixXd L_P;  // p x p
    Eigen::MatrixXd L_m;  // p x v
    Eigen::MatrixXd L_V;  // v x v

    /// The combined (p+v) x (p+v) Laplacian [L_P L_m; L_m^T L_V].
    [[nodiscard]] Eigen::MatrixXd combined() const;
};

LaplacianBlocks build_laplacian_blocks(const GridSpec& spec);

}  // namespace hvdc
