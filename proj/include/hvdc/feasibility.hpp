#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <json.hpp>
#include <limits>
#include <optional>

#include "hvdc/quadratic.hpp"

namespace hvdc {

enum class CertificateVerdict { CertificateFound, NotFound };

std::string to_string(CertificateVerdict v);

struct CertificateOptions {
    int restarts = 32;
    int max_iters = 5000;      // per restart
    double tol_pd = -1.0;      // <0: relative default 1e-7 * (1 + ||Upsilon||_F)
    std::uint64_t seed = 0;
    /// Optional starting multipliers for the first restart (e.g. the
    /// equilibrium certificate when augmenting with sharing constraints).
    std::optional<Eigen::VectorXd> warm_start;
    /// Early exit once the best smallest eigenvalue clears this bar (the
    /// verdict only needs the sign); +inf runs every restart to convergence.
    double stop_when_above = std::numeric_limits<double>::infinity();
};

struct CertificateOutcome {
    CertificateVerdict verdict = CertificateVerdict::NotFound;
    MultiplierVector multipliers;  // best found, scaled to unit max-norm
    double lambda_min = 0.0;       // smallest eigenvalue at the multipliers
    long iterations = 0;           // total ascent steps across restarts
    int restarts = 0;              // restarts actually executed
    double tolerance = 0.0;        // effective positive-definiteness bar
    std::uint64_t seed = 0;
};

/// Searches for multipliers t with Upsilon(t) positive definite by maximizing
/// lambda_min(Upsilon(t)) over the unit max-norm ball — a concave problem,
/// attacked with projected supergradient ascent (Polyak-style steps, random
/// restarts). CertificateFound means the grid has no solution of the given
/// quadratic system; NotFound is inconclusive by design.
CertificateOutcome find_certificate(const QuadraticSystem& sys,
                                    const CertificateOptions& opts = {});

struct CertificateCheck {
    double lambda_min = 0.0;
    bool is_certificate = false;
    double tolerance = 0.0;
};

/// Independent verifier: normalizes t onto the unit max-norm sphere (a
/// positive rescaling of a certificate is a certificate), assembles
/// Upsilon(t), runs a fresh symmetric eigensolve and applies the strict-PD
/// bar. Shares no state with find_certificate.
CertificateCheck check_certificate(const QuadraticSystem& sys, const MultiplierVector& t,
                                   double tol_pd = -1.0);
CertificateCheck check_certificate(const QuadraticSystem& sys, const Eigen::VectorXd& t,
                                   double tol_pd = -1.0);

/// Desk-scale oracle (dimension <= 3): dense grid over [lo, hi] plus local
/// Gauss-Newton polish; true iff no point solves every equation to within
/// eps (default: 1e-6 * (1 + max |c_i|)).
bool brute_force_unsolvable(const QuadraticSystem& sys, const Eigen::VectorXd& lo,
                            const Eigen::VectorXd& hi, int grid_n, double eps = -1.0);

/// Serialization replayable through check_certificate.
nlohmann::json certificate_to_json(const CertificateOutcome& outcome);
CertificateOutcome certificate_from_json(const nlohmann::json& doc);

}  // namespace hvdc
