#pragma once

// Shared fixtures for the test suites: the four-terminal benchmark network,
// a scalar droop-controlled unit, and a generator of random connected grids.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hvdc/grid_spec.hpp"
#include "hvdc/rand_util.hpp"

namespace hvdc::testing {

/// Four-terminal benchmark in SI units. Nodes 1 and 3 carry droop control
/// (gains d1, d3 in S); nodes 2 and 4 are constant power devices.
/// Line conductances: 1-2: 0.1 S, 1-4: 0.15 S, 2-3: 0.11 S, 2-4: 0.08 S.
inline GridSpec four_terminal_si(double d1, double d3, double v_nom = 400e3,
                                 double line_inductance = 10e-3) {
    GridSpec spec;
    spec.v_nom = v_nom;
    const double cap = 20e-6;
    spec.vc_units.push_back({"node1", cap, 0.0, 30e6, droop_to_zip(d1, v_nom)});
    spec.pq_units.push_back({"node2", cap, 0.0, -20e6});
    spec.vc_units.push_back({"node3", cap, 0.0, 9e6, droop_to_zip(d3, v_nom)});
    spec.pq_units.push_back({"node4", cap, 0.0, -24e6});
    spec.lines.push_back({"node1", "node2", 1.0 / 0.1, line_inductance});
    spec.lines.push_back({"node1", "node4", 1.0 / 0.15, line_inductance});
    spec.lines.push_back({"node2", "node3", 1.0 / 0.11, line_inductance});
    spec.lines.push_back({"node2", "node4", 1.0 / 0.08, line_inductance});
    return spec;
}

/// Same network normalized to base_power = 100 MW, base_voltage = 400 kV
/// (droop gains d1, d3 are already per-unit here).
inline GridSpec four_terminal_pu(double d1, double d3) {
    GridSpec spec;
    spec.v_nom = 1.0;
    const double ohm_base = 400e3 * 400e3 / 1e8;  // 1600 ohm
    const double cap = 20e-6 * ohm_base;          // 0.032
    const double l_t = 10e-3 / ohm_base;
    spec.vc_units.push_back({"node1", cap, 0.0, 0.30, droop_to_zip(d1, 1.0)});
    spec.pq_units.push_back({"node2", cap, 0.0, -0.20});
    spec.vc_units.push_back({"node3", cap, 0.0, 0.09, droop_to_zip(d3, 1.0)});
    spec.pq_units.push_back({"node4", cap, 0.0, -0.24});
    spec.lines.push_back({"node1", "node2", 1.0 / (0.1 * ohm_base), l_t});
    spec.lines.push_back({"node1", "node4", 1.0 / (0.15 * ohm_base), l_t});
    spec.lines.push_back({"node2", "node3", 1.0 / (0.11 * ohm_base), l_t});
    spec.lines.push_back({"node2", "node4", 1.0 / (0.08 * ohm_base), l_t});
    spec.per_unit = PerUnitBase{1e8, 400e3};
    return spec;
}

/// Single droop-controlled unit with no lines: C v' = -(G + d) v + d v_nom
/// + P/v after ZIP substitution.
inline GridSpec scalar_vc(double d, double v_nom, double power_ref,
                          double capacitance = 1.0, double conductance = 0.0) {
    GridSpec spec;
    spec.v_nom = v_nom;
    spec.vc_units.push_back(
        {"unit1", capacitance, conductance, power_ref, droop_to_zip(d, v_nom)});
    return spec;
}

/// Random connected grid with 2..max_nodes converters, at least one of them
/// voltage-controlled. Edges: a random spanning tree plus a few extras.
inline GridSpec random_connected(SplitMix64& rng, int max_nodes = 10) {
    const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes - 1)));
    const int n_vc = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));  // 1..n

    GridSpec spec;
    spec.v_nom = 0.8 + 0.4 * rng.uniform();
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
        const std::string id = "n" + std::to_string(i);
        ids.push_back(id);
        const double cap = 0.01 + rng.uniform();
        const double cond = 0.2 * rng.uniform();
        const double power = rng.uniform(-0.5, 0.5);
        if (i < n_vc) {
            ZipParams zip;
            zip.mu_P = rng.uniform(-0.1, 0.1);
            zip.mu_I = rng.uniform(0.0, 1.0);
            zip.mu_Z = rng.uniform(-1.0, 0.2);
            spec.vc_units.push_back({id, cap, cond, power, zip});
        } else {
            spec.pq_units.push_back({id, cap, cond, power});
        }
    }
    // Spanning tree: attach node i to a random earlier node.
    for (int i = 1; i < n; ++i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
        spec.lines.push_back({ids[static_cast<std::size_t>(j)], ids[static_cast<std::size_t>(i)],
                              0.5 + 4.0 * rng.uniform(), 0.001 + 0.01 * rng.uniform()});
    }
    // A few extra edges (may duplicate tree edges; parallel lines are legal).
    const int extras = static_cast<int>(rng.below(3));
    for (int e = 0; e < extras; ++e) {
        const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (a == b) b = (b + 1) % n;
        spec.lines.push_back({ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)],
                              0.5 + 4.0 * rng.uniform(), 0.001 + 0.01 * rng.uniform()});
    }
    return spec;
}

inline bool approx_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace hvdc::testing
