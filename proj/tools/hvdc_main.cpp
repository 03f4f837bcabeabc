// hvdc — analyses and simulations of multi-terminal dc grids.
//
// Subcommands:
//   validate   check a grid file, report violations as JSON
//   analyze    consolidated report: certificates, equilibria, stability
//   sweep      evaluate a 1D/2D parameter region map, emit CSV
//   simulate   integrate the closed-loop dynamics, emit a trace CSV
//   plot       render a region CSV as an SVG heatmap
//
// Exit codes: 0 ok, 2 input invalid, 3 internal error, 4 simulation abort,
// 5 soundness violation (a non-existence certificate coexists with a found
// equilibrium).

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hvdc/analysis.hpp"
#include "hvdc/dynamics.hpp"
#include "hvdc/equilibrium.hpp"
#include "hvdc/errors.hpp"
#include "hvdc/grid_io.hpp"
#include "hvdc/grid_spec.hpp"
#include "hvdc/heatmap.hpp"
#include "hvdc/models.hpp"
#include "hvdc/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputInvalid = 2;
constexpr int kInternal = 3;
constexpr int kSimAbort = 4;
constexpr int kSoundness = 5;

int exit_code_for(const hvdc::Error& e) {
    switch (e.code()) {
        case hvdc::ErrorCode::DegenerateSystem:
        case hvdc::ErrorCode::EigensolveFailure:
        case hvdc::ErrorCode::VoltageFloor:
            return kInternal;
        default:
            return kInputInvalid;  // spec, parse, io, dimension, sign errors
    }
}

/// Writes to the named file, or to stdout when the name is empty.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(std::cout);
        return kOk;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "IO_ERROR: cannot open output file: " << path << '\n';
        return kInputInvalid;
    }
    emit(out);
    return kOk;
}

struct GlobalFlags {
    std::string grid_file;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string jacobian = "derived";
    bool lax = false;
    bool per_unit = false;

    [[nodiscard]] hvdc::LoadOptions load_options() const {
        hvdc::LoadOptions opts;
        opts.lax = lax;
        opts.require_per_unit = per_unit;
        return opts;
    }

    [[nodiscard]] hvdc::JacobianVariant jacobian_variant() const {
        return jacobian == "paper" ? hvdc::JacobianVariant::Paper
                                   : hvdc::JacobianVariant::Derived;
    }
};

Eigen::VectorXd parse_vector(const std::vector<double>& values) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return v;
}

int cmd_validate(const GlobalFlags& flags) {
    const hvdc::GridSpec grid = hvdc::load_grid(flags.grid_file, flags.load_options());
    const std::vector<hvdc::Violation> violations = hvdc::validate(grid);
    nlohmann::json report;
    report["ok"] = hvdc::is_valid(violations);
    report["violations"] = nlohmann::json::array();
    for (const auto& v : violations) {
        report["violations"].push_back(
            {{"code", v.code},
             {"severity", v.severity == hvdc::Severity::Error ? "error" : "warning"},
             {"subject", v.subject},
             {"detail", v.detail}});
    }
    std::cout << report.dump(2) << '\n';
    return hvdc::is_valid(violations) ? kOk : kInputInvalid;
}

int cmd_analyze(const GlobalFlags& flags, const std::vector<double>& gamma,
                int lmi_restarts, int lmi_max_iters, int newton_starts,
                const std::string& output) {
    const hvdc::GridSpec grid = hvdc::load_grid(flags.grid_file, flags.load_options());
    hvdc::AnalyzeOptions opts;
    opts.seed = flags.seed;
    opts.jacobian = flags.jacobian_variant();
    opts.lmi_restarts = lmi_restarts;
    opts.lmi_max_iters = lmi_max_iters;
    opts.newton_starts = newton_starts;
    if (!gamma.empty()) opts.gamma = parse_vector(gamma);

    const nlohmann::json report = hvdc::analyze_grid(grid, opts);
    const int io = with_output(output, [&](std::ostream& out) { out << report.dump(2) << '\n'; });
    if (io != kOk) return io;
    if (!report["validation"]["ok"].get<bool>()) return kInputInvalid;
    if (report["consistency_violation"].get<bool>()) return kSoundness;
    return kOk;
}

int cmd_sweep(const GlobalFlags& flags, const std::string& sweep_file,
              const std::string& output, const hvdc::SweepOptions& sweep_opts) {
    const hvdc::GridSpec grid = hvdc::load_grid(flags.grid_file, flags.load_options());
    hvdc::SweepSpec spec = hvdc::load_sweep(sweep_file);
    if (flags.seed_given) spec.seed = flags.seed;

    const hvdc::SweepResult result = hvdc::run_sweep(grid, spec, sweep_opts);
    const int io =
        with_output(output, [&](std::ostream& out) { hvdc::write_region_csv(result, out); });
    if (io != kOk) return io;
    if (result.violations > 0) {
        std::cerr << "soundness violation: " << result.violations
                  << " cell(s) hold both a non-existence certificate and a found "
                     "equilibrium\n";
        return kSoundness;
    }
    return kOk;
}

int cmd_simulate(const GlobalFlags& flags, const std::string& x0_arg, double t0,
                 double t_final, const std::string& method, double dt, double tol,
                 bool reduced, const std::string& output) {
    const hvdc::GridSpec grid = hvdc::load_grid(flags.grid_file, flags.load_options());
    const std::vector<hvdc::Violation> violations = hvdc::validate(grid);
    if (!hvdc::is_valid(violations)) {
        throw hvdc::Error(hvdc::ErrorCode::InvalidSpec, "grid description fails validation");
    }
    const hvdc::FullModel model = hvdc::assemble_full(grid);
    const int dim = reduced ? model.reduced.dim() : model.dim();

    Eigen::VectorXd x0;
    if (x0_arg.empty() || x0_arg == "nominal") {
        x0 = Eigen::VectorXd::Zero(dim);
        x0.head(model.reduced.dim()).setConstant(grid.v_nom);
        if (!reduced && model.n_lines() > 0) {
            // Start lines at the quasi-steady currents of the nominal profile.
            const Eigen::VectorXd v = x0.head(model.reduced.dim());
            x0.tail(model.n_lines()) =
                (model.B_P.transpose() * v.head(model.reduced.n_pq) +
                 model.B_V.transpose() * v.tail(model.reduced.n_vc))
                    .cwiseQuotient(model.R_T);
        }
    } else if (x0_arg == "equilibrium") {
        hvdc::MultistartOptions ms;
        ms.seed = flags.seed;
        const std::vector<hvdc::Equilibrium> eqs = hvdc::multistart_solve(model.reduced, ms);
        if (eqs.empty()) {
            throw hvdc::Error(hvdc::ErrorCode::InvalidSpec,
                              "--x0 equilibrium: no equilibrium found for this grid");
        }
        if (reduced) {
            x0 = eqs.front().v_star;
        } else {
            x0.resize(dim);
            x0 << eqs.front().v_star, eqs.front().i_T_star;
        }
    } else {
        std::vector<double> values;
        std::stringstream ss(x0_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                values.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw hvdc::Error(hvdc::ErrorCode::ParseError,
                                  "--x0 expects 'nominal', 'equilibrium', or a comma list "
                                  "of numbers");
            }
        }
        x0 = parse_vector(values);
        if (x0.size() != dim) {
            throw hvdc::Error(hvdc::ErrorCode::DimensionMismatch,
                              "--x0 has " + std::to_string(x0.size()) + " entries, state has " +
                                  std::to_string(dim));
        }
    }

    hvdc::IntegrateOptions opts;
    opts.method =
        method == "rk4" ? hvdc::IntegrationMethod::Rk4 : hvdc::IntegrationMethod::Rk45;
    if (dt > 0) opts.dt = dt;
    if (tol > 0) opts.tol = tol;

    const hvdc::SimTrace trace = reduced
                                     ? hvdc::integrate(model.reduced, x0, t0, t_final, opts)
                                     : hvdc::integrate(model, x0, t0, t_final, opts);
    std::vector<std::string> names = model.state_names();
    if (reduced) names.resize(static_cast<std::size_t>(model.reduced.dim()));

    const int io = with_output(
        output, [&](std::ostream& out) { hvdc::write_trace_csv(trace, names, out); });
    if (io != kOk) return io;
    if (trace.final_status == hvdc::SimStatus::Aborted) {
        std::cerr << "simulation aborted";
        if (!trace.events.empty()) {
            std::cerr << ": " << hvdc::to_string(trace.events.front().kind) << " at t="
                      << trace.events.front().time;
        }
        std::cerr << '\n';
        return kSimAbort;
    }
    return kOk;
}

int cmd_plot(const std::string& input, const std::string& field, const std::string& title,
             const std::string& output) {
    std::ifstream in(input);
    if (!in) throw hvdc::Error(hvdc::ErrorCode::IoError, "cannot open region CSV: " + input);
    const hvdc::SweepResult result = hvdc::read_region_csv(in);
    const std::string svg =
        hvdc::render_heatmap_svg(result, hvdc::heatmap_field_from_string(field), title);
    return with_output(output, [&](std::ostream& out) { out << svg; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analyses and simulations of multi-terminal dc grids"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    app.add_option("--grid", flags.grid_file, "grid description JSON file");
    auto* seed_opt = app.add_option("--seed", flags.seed, "RNG seed (deterministic reruns)");
    app.add_option("--jacobian", flags.jacobian, "linearization variant at work points")
        ->check(CLI::IsMember({"derived", "paper"}));
    app.add_flag("--lax", flags.lax, "tolerate unknown keys in input files");
    app.add_flag("--per-unit", flags.per_unit, "require a per_unit block in the grid file");

    auto* validate_cmd = app.add_subcommand("validate", "check a grid file");

    auto* analyze_cmd = app.add_subcommand("analyze", "consolidated grid report (JSON)");
    std::vector<double> gamma;
    analyze_cmd->add_option("--gamma", gamma, "sharing weights, one per VC unit")
        ->delimiter(',');
    int lmi_restarts = 24, lmi_max_iters = 3000, newton_starts = 24;
    analyze_cmd->add_option("--restarts", lmi_restarts, "certificate search restarts");
    analyze_cmd->add_option("--max-iters", lmi_max_iters, "ascent iterations per restart");
    analyze_cmd->add_option("--newton-starts", newton_starts, "multistart attempts");
    std::string analyze_out;
    analyze_cmd->add_option("-o,--output", analyze_out, "write report here (default stdout)");

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter region map (CSV)");
    std::string sweep_file, sweep_out;
    sweep_cmd->add_option("--sweep", sweep_file, "sweep description JSON file")->required();
    sweep_cmd->add_option("-o,--output", sweep_out, "write region CSV here (default stdout)");
    hvdc::SweepOptions sweep_opts;
    sweep_cmd->add_option("--restarts", sweep_opts.lmi_restarts, "certificate restarts per cell");
    sweep_cmd->add_option("--max-iters", sweep_opts.lmi_max_iters,
                          "ascent iterations per restart");
    sweep_cmd->add_option("--newton-starts", sweep_opts.newton_starts,
                          "multistart attempts per cell");
    sweep_cmd->add_option("--threads", sweep_opts.threads,
                          "worker pool size (0: hardware concurrency)");

    auto* simulate_cmd = app.add_subcommand("simulate", "integrate the dynamics (trace CSV)");
    std::string x0_arg = "nominal", method = "rk45", sim_out;
    double t0 = 0.0, t_final = 0.0, dt = 0.0, tol = 0.0;
    bool reduced = false;
    simulate_cmd->add_option("--x0", x0_arg,
                             "'nominal', 'equilibrium', or comma-separated state");
    simulate_cmd->add_option("--t0", t0, "start time (s)");
    simulate_cmd->add_option("--t-final", t_final, "end time (s)")->required();
    simulate_cmd->add_option("--method", method, "integrator")
        ->check(CLI::IsMember({"rk4", "rk45"}));
    simulate_cmd->add_option("--dt", dt, "rk4 step / rk45 initial step (s)");
    simulate_cmd->add_option("--tol", tol, "rk45 accuracy target");
    simulate_cmd->add_flag("--reduced", reduced, "integrate the short-line model");
    simulate_cmd->add_option("-o,--output", sim_out, "write trace CSV here (default stdout)");

    auto* plot_cmd = app.add_subcommand("plot", "render a region CSV as SVG");
    std::string plot_in, plot_field = "lmi_existence", plot_title, plot_out;
    plot_cmd->add_option("-i,--input", plot_in, "region CSV produced by sweep")->required();
    plot_cmd->add_option("--field", plot_field, "which verdict to paint")
        ->check(CLI::IsMember({"lmi_existence", "lmi_powersharing", "newton", "stability"}));
    plot_cmd->add_option("--title", plot_title, "heading text");
    plot_cmd->add_option("-o,--output", plot_out, "write SVG here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputInvalid;
    }
    flags.seed_given = seed_opt->count() > 0;

    try {
        if (*validate_cmd || *analyze_cmd || *sweep_cmd || *simulate_cmd) {
            if (flags.grid_file.empty()) {
                std::cerr << "INVALID_SPEC: --grid <file> is required\n";
                return kInputInvalid;
            }
        }
        if (*validate_cmd) return cmd_validate(flags);
        if (*analyze_cmd) {
            return cmd_analyze(flags, gamma, lmi_restarts, lmi_max_iters, newton_starts,
                               analyze_out);
        }
        if (*sweep_cmd) {
            sweep_opts.jacobian = flags.jacobian_variant();
            return cmd_sweep(flags, sweep_file, sweep_out, sweep_opts);
        }
        if (*simulate_cmd) {
            return cmd_simulate(flags, x0_arg, t0, t_final, method, dt, tol, reduced,
                                sim_out);
        }
        if (*plot_cmd) return cmd_plot(plot_in, plot_field, plot_title, plot_out);
        std::cerr << "INVALID_SPEC: no subcommand given\n";
        return kInputInvalid;
    } catch (const hvdc::Error& e) {
        std::cerr << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}
