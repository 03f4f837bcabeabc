#include "hvdc/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hvdc/errors.hpp"
#include "hvdc/rand_util.hpp"

namespace hvdc {

namespace {

double effective_tol(double tol_pd, const Eigen::MatrixXd& upsilon) {
    if (tol_pd >= 0.0) return tol_pd;
    return 1e-7 * (1.0 + upsilon.norm());
}

struct SmallestPair {
    double lambda;
    Eigen::VectorXd u;  // unit eigenvector of lambda
};

SmallestPair smallest_eigenpair(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::EigensolveFailure, "symmetric eigensolve did not converge");
    }
    return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

/// d lambda_min / d t_i = u^T Upsilon_i u for the unit eigenvector u = [x; s]
/// (a supergradient at eigenvalue ties).
Eigen::VectorXd supergradient(const QuadraticSystem& sys, const Eigen::VectorXd& u) {
    const int n = sys.dimension;
    const Eigen::VectorXd x = u.head(n);
    const double s = u(n);
    Eigen::VectorXd g(sys.size());
    for (int i = 0; i < sys.size(); ++i) {
        const QuadraticEquation& eq = sys.equations[static_cast<std::size_t>(i)];
        g(i) = x.dot(eq.A * x) + 2.0 * s * eq.B.dot(x) - 2.0 * eq.c * s * s;
    }
    return g;
}

struct AscentResult {
    double lambda = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd t;
    long iterations = 0;
};

/// Projected supergradient ascent of lambda_min(Upsilon(t)) over the unit
/// max-norm ball, with Polyak-style level steps: the target level trails the
/// running best by an adaptive margin delta, halved whenever progress stalls.
AscentResult ascend(const QuadraticSystem& sys, Eigen::VectorXd t, int max_iters,
                    double scale) {
    AscentResult best;
    best.t = t = t.cwiseMax(-1.0).cwiseMin(1.0);

    double delta = 0.1 * scale;
    const double delta_floor = 1e-13 * scale;
    int stall = 0;

    for (int k = 0; k < max_iters; ++k) {
        ++best.iterations;
        const Eigen::MatrixXd upsilon = assemble_upsilon(sys, t);
        const SmallestPair eig = smallest_eigenpair(upsilon);
        if (eig.lambda > best.lambda + 1e-14 * scale) {
            best.lambda = eig.lambda;
            best.t = t;
            stall = 0;
        } else if (++stall >= 15) {
            delta *= 0.5;
            stall = 0;
            if (delta < delta_floor) break;
        }
        const Eigen::VectorXd g = supergradient(sys, eig.u);
        const double gnorm2 = g.squaredNorm();
        if (gnorm2 < 1e-300) break;
        const double step = (best.lambda + delta - eig.lambda) / gnorm2;
        t = (t + step * g).cwiseMax(-1.0).cwiseMin(1.0);
    }
    return best;
}

}  // namespace

std::string to_string(CertificateVerdict v) {
    return v == CertificateVerdict::CertificateFound ? "CERTIFICATE_FOUND" : "NOT_FOUND";
}

CertificateOutcome find_certificate(const QuadraticSystem& sys, const CertificateOptions& opts) {
    const int m = sys.size();
    if (m == 0) {
        throw Error(ErrorCode::DegenerateSystem, "no equations to certify against");
    }

    // Basis-pencil magnitudes set the objective scale.
    double scale = 0.0;
    for (const auto& eq : sys.equations) {
        const double norm = std::sqrt(eq.A.squaredNorm() + 2.0 * eq.B.squaredNorm() +
                                      4.0 * eq.c * eq.c);
        scale = std::max(scale, norm);
    }
    if (scale == 0.0) {
        throw Error(ErrorCode::DegenerateSystem, "every basis pencil is identically zero");
    }

    if (opts.warm_start && opts.warm_start->size() != m) {
        throw Error(ErrorCode::DimensionMismatch, "warm start length does not match equations");
    }

    CertificateOutcome outcome;
    outcome.seed = opts.seed;

    AscentResult best;
    const int restarts = std::max(1, opts.restarts);
    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd t0;
        if (r == 0 && opts.warm_start) {
            t0 = *opts.warm_start;
        } else if (r == 0) {
            t0 = Eigen::VectorXd::Ones(m);
        } else {
            SplitMix64 rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
            t0.resize(m);
            for (int i = 0; i < m; ++i) t0(i) = rng.uniform(-1.0, 1.0);
        }
        const AscentResult res = ascend(sys, std::move(t0), std::max(1, opts.max_iters), scale);
        outcome.iterations += res.iterations;
        ++outcome.restarts;
        if (res.lambda > best.lambda) {
            best.lambda = res.lambda;
            best.t = res.t;
        }
        if (best.lambda > opts.stop_when_above) break;
    }

    // A positive scaling of a certificate is a certificate; report on the
    // unit sphere of the max-norm.
    const double tmax = best.t.lpNorm<Eigen::Infinity>();
    if (tmax > 0.0) best.t /= tmax;

    // Fresh verification eigensolve at the reported multipliers.
    const Eigen::MatrixXd upsilon = assemble_upsilon(sys, best.t);
    const double lambda = smallest_eigenpair(upsilon).lambda;
    const double tol = effective_tol(opts.tol_pd, upsilon);

    outcome.multipliers = zero_multipliers(sys);
    outcome.multipliers.t = best.t;
    outcome.lambda_min = lambda;
    outcome.tolerance = tol;
    outcome.verdict = lambda > tol ? CertificateVerdict::CertificateFound
                                   : CertificateVerdict::NotFound;
    return outcome;
}

CertificateCheck check_certificate(const QuadraticSystem& sys, const Eigen::VectorXd& t,
                                   double tol_pd) {
    if (t.size() != sys.size()) {
        throw Error(ErrorCode::DimensionMismatch, "multiplier count does not match equations");
    }
    // Judge on the unit max-norm ball: any positive rescaling of a
    // certificate is a certificate, so normalize before the bar is applied.
    Eigen::VectorXd scaled = t;
    const double tmax = scaled.lpNorm<Eigen::Infinity>();
    if (tmax > 0.0) scaled /= tmax;

    const Eigen::MatrixXd upsilon = assemble_upsilon(sys, scaled);
    const double lambda = smallest_eigenpair(upsilon).lambda;
    CertificateCheck check;
    check.lambda_min = lambda;
    check.tolerance = effective_tol(tol_pd, upsilon);
    check.is_certificate = lambda > check.tolerance;
    return check;
}

CertificateCheck check_certificate(const QuadraticSystem& sys, const MultiplierVector& t,
                                   double tol_pd) {
    return check_certificate(sys, t.t, tol_pd);
}

bool brute_force_unsolvable(const QuadraticSystem& sys, const Eigen::VectorXd& lo,
                            const Eigen::VectorXd& hi, int grid_n, double eps) {
    const int n = sys.dimension;
    if (n > 3) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "exhaustive search is a desk-scale oracle (dimension <= 3)");
    }
    if (lo.size() != n || hi.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "search box does not match dimension");
    }
    grid_n = std::max(grid_n, 2);

    double c_scale = 0.0;
    for (const auto& eq : sys.equations) c_scale = std::max(c_scale, std::abs(eq.c));
    const double eps_eff = eps >= 0.0 ? eps : 1e-6 * (1.0 + c_scale);

    const auto score = [&sys](const Eigen::VectorXd& x) {
        return sys.residuals(x).cwiseAbs().maxCoeff();
    };

    // Best grid candidates feed a local polish.
    constexpr int kCandidates = 24;
    std::vector<std::pair<double, Eigen::VectorXd>> best;

    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    Eigen::VectorXd x(n);
    bool done = false;
    while (!done) {
        for (int d = 0; d < n; ++d) {
            x(d) = lo(d) + (hi(d) - lo(d)) * idx[static_cast<std::size_t>(d)] / (grid_n - 1);
        }
        const double s = score(x);
        if (s < eps_eff) return false;
        if (best.size() < kCandidates) {
            best.emplace_back(s, x);
            std::push_heap(best.begin(), best.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
        } else if (s < best.front().first) {
            std::pop_heap(best.begin(), best.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
            best.back() = {s, x};
            std::push_heap(best.begin(), best.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        // Odometer over the grid.
        for (int d = 0;; ++d) {
            if (d == n) {
                done = true;
                break;
            }
            if (++idx[static_cast<std::size_t>(d)] < grid_n) break;
            idx[static_cast<std::size_t>(d)] = 0;
        }
    }

    // Gauss-Newton polish with backtracking; the step may leave the box
    // slightly — finding any solution still settles solvability.
    for (auto& [s0, start] : best) {
        Eigen::VectorXd xc = start;
        Eigen::VectorXd r = sys.residuals(xc);
        for (int it = 0; it < 60; ++it) {
            if (r.cwiseAbs().maxCoeff() < eps_eff) return false;
            Eigen::MatrixXd jac(sys.size(), n);
            for (int i = 0; i < sys.size(); ++i) {
                const QuadraticEquation& eq = sys.equations[static_cast<std::size_t>(i)];
                jac.row(i) = (eq.A * xc + eq.B).transpose();
            }
            const Eigen::VectorXd dx = jac.completeOrthogonalDecomposition().solve(-r);
            if (!dx.allFinite()) break;
            double alpha = 1.0;
            const double base = r.squaredNorm();
            bool moved = false;
            while (alpha > 1e-6) {
                const Eigen::VectorXd trial = xc + alpha * dx;
                const Eigen::VectorXd rt = sys.residuals(trial);
                if (rt.squaredNorm() < base) {
                    xc = trial;
                    r = rt;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        if (r.cwiseAbs().maxCoeff() < eps_eff) return false;
    }
    return true;
}

nlohmann::json certificate_to_json(const CertificateOutcome& outcome) {
    nlohmann::json doc;
    doc["verdict"] = to_string(outcome.verdict);
    doc["t"] = nlohmann::json::array();
    doc["tags"] = nlohmann::json::array();
    for (int i = 0; i < outcome.multipliers.t.size(); ++i) {
        doc["t"].push_back(outcome.multipliers.t(i));
        doc["tags"].push_back(to_string(outcome.multipliers.tags[static_cast<std::size_t>(i)]));
    }
    doc["lambda_min"] = outcome.lambda_min;
    doc["tol"] = outcome.tolerance;
    doc["seed"] = outcome.seed;
    doc["iterations"] = outcome.iterations;
    doc["restarts"] = outcome.restarts;
    return doc;
}

CertificateOutcome certificate_from_json(const nlohmann::json& doc) {
    CertificateOutcome outcome;
    const std::string verdict = doc.at("verdict").get<std::string>();
    if (verdict == "CERTIFICATE_FOUND") {
        outcome.verdict = CertificateVerdict::CertificateFound;
    } else if (verdict == "NOT_FOUND") {
        outcome.verdict = CertificateVerdict::NotFound;
    } else {
        throw Error(ErrorCode::ParseError, "unknown certificate verdict: " + verdict);
    }
    const auto& t = doc.at("t");
    outcome.multipliers.t.resize(static_cast<int>(t.size()));
    for (int i = 0; i < outcome.multipliers.t.size(); ++i) {
        outcome.multipliers.t(i) = t[static_cast<std::size_t>(i)].get<double>();
    }
    if (doc.contains("tags")) {
        for (const auto& tag : doc["tags"]) {
            outcome.multipliers.tags.push_back(
                multiplier_tag_from_string(tag.get<std::string>()));
        }
    } else {
        outcome.multipliers.tags.assign(static_cast<std::size_t>(outcome.multipliers.t.size()),
                                        MultiplierTag::T_P);
    }
    outcome.lambda_min = doc.at("lambda_min").get<double>();
    outcome.tolerance = doc.at("tol").get<double>();
    outcome.seed = doc.value("seed", 0ULL);
    outcome.iterations = doc.value("iterations", 0L);
    outcome.restarts = doc.value("restarts", 0);
    return outcome;
}

}  // namespace hvdc
