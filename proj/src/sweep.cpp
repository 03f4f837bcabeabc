#include "hvdc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "hvdc/certificates.hpp"
#include "hvdc/equilibrium.hpp"
#include "hvdc/errors.hpp"
#include "hvdc/feasibility.hpp"
#include "hvdc/models.hpp"
#include "hvdc/rand_util.hpp"
#include "hvdc/stability.hpp"

namespace hvdc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw Error(ErrorCode::InvalidSpec, message);
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            fail("unknown key '" + item.key() + "' in " + where);
        }
    }
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> values(static_cast<std::size_t>(steps));
    for (int j = 0; j < steps; ++j) {
        values[static_cast<std::size_t>(j)] =
            lo + static_cast<double>(j) * (hi - lo) / static_cast<double>(steps - 1);
    }
    // Pin the endpoint so the CSV axis line (min, max) regenerates the grid
    // bit-for-bit on read-back.
    values.back() = hi;
    return values;
}

double pencil_scale(const QuadraticSystem& sys) {
    double scale = 0.0;
    for (const auto& eq : sys.equations) {
        scale = std::max(scale, std::sqrt(eq.A.squaredNorm() + 2.0 * eq.B.squaredNorm() +
                                          4.0 * eq.c * eq.c));
    }
    return scale;
}

GridSpec apply_axes(const GridSpec& base, const SweepSpec& spec,
                    const std::vector<double>& values) {
    GridSpec mutated = base;
    for (std::size_t a = 0; a < spec.parameters.size(); ++a) {
        const SweptParameter& axis = spec.parameters[a];
        VcUnit* unit = nullptr;
        for (auto& u : mutated.vc_units) {
            if (u.id == axis.vc_unit_id) unit = &u;
        }
        if (unit == nullptr) fail("swept unit '" + axis.vc_unit_id + "' is not voltage controlled");
        const double value = values[a];
        switch (axis.param) {
            case SweepParam::DroopD: unit->zip = droop_to_zip(value, mutated.v_nom); break;
            case SweepParam::MuP: unit->zip.mu_P = value; break;
            case SweepParam::MuI: unit->zip.mu_I = value; break;
            case SweepParam::MuZ: unit->zip.mu_Z = value; break;
        }
    }
    return mutated;
}

}  // namespace

std::string to_string(SweepParam p) {
    switch (p) {
        case SweepParam::DroopD: return "droop_d";
        case SweepParam::MuP: return "mu_P";
        case SweepParam::MuI: return "mu_I";
        case SweepParam::MuZ: return "mu_Z";
    }
    return "droop_d";
}

SweepParam sweep_param_from_string(const std::string& name) {
    if (name == "droop_d") return SweepParam::DroopD;
    if (name == "mu_P") return SweepParam::MuP;
    if (name == "mu_I") return SweepParam::MuI;
    if (name == "mu_Z") return SweepParam::MuZ;
    fail("unknown sweep parameter '" + name + "'");
}

std::string to_string(LmiRegion r) {
    switch (r) {
        case LmiRegion::Feasible: return "FEASIBLE";
        case LmiRegion::NotFound: return "NOT_FOUND";
        case LmiRegion::Skipped: return "SKIPPED";
    }
    return "SKIPPED";
}

std::string to_string(NewtonRegion r) {
    switch (r) {
        case NewtonRegion::Found: return "FOUND";
        case NewtonRegion::None: return "NONE";
        case NewtonRegion::Skipped: return "SKIPPED";
    }
    return "SKIPPED";
}

std::string to_string(StabilityRegion r) {
    switch (r) {
        case StabilityRegion::Stable: return "STABLE";
        case StabilityRegion::Unstable: return "UNSTABLE";
        case StabilityRegion::Inconclusive: return "INCONCLUSIVE";
        case StabilityRegion::Skipped: return "SKIPPED";
    }
    return "SKIPPED";
}

LmiRegion lmi_region_from_string(const std::string& name) {
    if (name == "FEASIBLE") return LmiRegion::Feasible;
    if (name == "NOT_FOUND") return LmiRegion::NotFound;
    if (name == "SKIPPED") return LmiRegion::Skipped;
    fail("unknown LMI verdict '" + name + "'");
}

NewtonRegion newton_region_from_string(const std::string& name) {
    if (name == "FOUND") return NewtonRegion::Found;
    if (name == "NONE") return NewtonRegion::None;
    if (name == "SKIPPED") return NewtonRegion::Skipped;
    fail("unknown solver verdict '" + name + "'");
}

StabilityRegion stability_region_from_string(const std::string& name) {
    if (name == "STABLE") return StabilityRegion::Stable;
    if (name == "UNSTABLE") return StabilityRegion::Unstable;
    if (name == "INCONCLUSIVE") return StabilityRegion::Inconclusive;
    if (name == "SKIPPED") return StabilityRegion::Skipped;
    fail("unknown stability verdict '" + name + "'");
}

SweepSpec sweep_from_json(const json& doc) {
    if (!doc.is_object()) fail("sweep description must be a JSON object");
    check_keys(doc, {"parameters", "analyses", "gamma", "seed"}, "sweep description");
    if (!doc.contains("parameters") || !doc["parameters"].is_array()) {
        fail("sweep description needs a 'parameters' array");
    }

    SweepSpec spec;
    for (const auto& entry : doc["parameters"]) {
        if (!entry.is_object()) fail("each swept parameter must be an object");
        check_keys(entry, {"vc_unit_id", "param", "min", "max", "steps"}, "swept parameter");
        SweptParameter axis;
        if (!entry.contains("vc_unit_id") || !entry["vc_unit_id"].is_string()) {
            fail("swept parameter needs a string 'vc_unit_id'");
        }
        axis.vc_unit_id = entry["vc_unit_id"].get<std::string>();
        if (!entry.contains("param") || !entry["param"].is_string()) {
            fail("swept parameter needs a string 'param'");
        }
        axis.param = sweep_param_from_string(entry["param"].get<std::string>());
        if (!entry.contains("min") || !entry["min"].is_number() || !entry.contains("max") ||
            !entry["max"].is_number()) {
            fail("swept parameter needs numeric 'min' and 'max'");
        }
        axis.min = entry["min"].get<double>();
        axis.max = entry["max"].get<double>();
        if (!(axis.min < axis.max)) fail("swept parameter needs min < max");
        if (!entry.contains("steps") || !entry["steps"].is_number_integer()) {
            fail("swept parameter needs an integer 'steps'");
        }
        axis.steps = entry["steps"].get<int>();
        if (axis.steps < 2) fail("swept parameter needs steps >= 2");
        spec.parameters.push_back(std::move(axis));
    }
    if (spec.parameters.empty() || spec.parameters.size() > 2) {
        fail("region maps are one- or two-dimensional: give 1 or 2 parameters");
    }
    if (spec.parameters.size() == 2 &&
        spec.parameters[0].vc_unit_id == spec.parameters[1].vc_unit_id &&
        spec.parameters[0].param == spec.parameters[1].param) {
        fail("the two axes name the same parameter of the same unit");
    }

    if (doc.contains("analyses")) {
        if (!doc["analyses"].is_array()) fail("'analyses' must be an array of names");
        for (const auto& name : doc["analyses"]) {
            if (!name.is_string()) fail("'analyses' entries must be strings");
            const std::string s = name.get<std::string>();
            if (s == "existence_lmi") continue;  // always on
            if (s == "powersharing_lmi") {
                spec.analyses.powersharing_lmi = true;
            } else if (s == "newton") {
                spec.analyses.newton = true;
            } else if (s == "stability") {
                spec.analyses.stability = true;
            } else {
                fail("unknown analysis '" + s + "'");
            }
        }
    }
    if (doc.contains("gamma")) {
        if (!doc["gamma"].is_array() || doc["gamma"].empty()) {
            fail("'gamma' must be a non-empty array of positive weights");
        }
        Eigen::VectorXd gamma(doc["gamma"].size());
        int i = 0;
        for (const auto& g : doc["gamma"]) {
            if (!g.is_number()) fail("'gamma' entries must be numbers");
            gamma(i++) = g.get<double>();
        }
        if (gamma.minCoeff() <= 0.0) {
            throw Error(ErrorCode::NonpositiveGamma, "sharing weights must be positive");
        }
        spec.gamma = std::move(gamma);
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
            fail("'seed' must be an integer");
        }
        spec.seed = doc["seed"].get<std::uint64_t>();
    }
    return spec;
}

SweepSpec load_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open sweep file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("sweep file ") + path + ": " + e.what());
    }
    return sweep_from_json(doc);
}

SweepResult run_sweep(const GridSpec& grid, const SweepSpec& spec, const SweepOptions& opts) {
    if (!is_valid(validate(grid))) fail("grid description fails validation");
    // Resolve axis targets up front so a bad id fails before any cell work.
    for (const auto& axis : spec.parameters) {
        bool found = false;
        for (const auto& u : grid.vc_units) found = found || u.id == axis.vc_unit_id;
        if (!found) fail("swept unit '" + axis.vc_unit_id + "' is not a voltage-controlled unit");
    }
    const int n_vc = grid.n_vc();
    Eigen::VectorXd gamma = spec.gamma.value_or(Eigen::VectorXd::Ones(n_vc));
    if (spec.analyses.powersharing_lmi && gamma.size() != n_vc) {
        throw Error(ErrorCode::DimensionMismatch,
                    "gamma needs one entry per voltage-controlled unit");
    }

    SweepResult result;
    for (const auto& axis : spec.parameters) {
        result.axis_names.push_back(axis.vc_unit_id + ":" + to_string(axis.param));
        result.axis_values.push_back(linspace(axis.min, axis.max, axis.steps));
    }
    const bool two_d = spec.parameters.size() == 2;
    const std::size_t n0 = result.axis_values[0].size();
    const std::size_t n1 = two_d ? result.axis_values[1].size() : 1;

    const std::size_t total = n0 * n1;
    std::vector<RegionCell> cells(total);

    const auto evaluate_cell = [&](std::size_t index) {
        const std::size_t i0 = index / n1;
        const std::size_t i1 = index % n1;
        std::vector<double> values{result.axis_values[0][i0]};
        if (two_d) values.push_back(result.axis_values[1][i1]);

        const GridSpec mutated = apply_axes(grid, spec, values);
        const FullModel model = assemble_full(mutated);
        const std::uint64_t cell_seed = derive_seed(spec.seed, index);

        RegionCell cell;
        cell.values = std::move(values);

        const QuadraticSystem eq_sys = equilibrium_quadratics(model.reduced);
        CertificateOptions copts;
        copts.restarts = opts.lmi_restarts;
        copts.max_iters = opts.lmi_max_iters;
        copts.seed = derive_seed(cell_seed, 0);
        copts.stop_when_above = 1e-5 * pencil_scale(eq_sys);
        const CertificateOutcome existence = find_certificate(eq_sys, copts);
        cell.lmi_existence = existence.verdict == CertificateVerdict::CertificateFound
                                 ? LmiRegion::Feasible
                                 : LmiRegion::NotFound;

        if (spec.analyses.powersharing_lmi) {
            const QuadraticSystem combined =
                concatenate(eq_sys, powersharing_quadratics(model.reduced, gamma));
            CertificateOptions ps_opts;
            ps_opts.restarts = opts.lmi_restarts;
            ps_opts.max_iters = opts.lmi_max_iters;
            ps_opts.seed = derive_seed(cell_seed, 1);
            ps_opts.stop_when_above = 1e-5 * pencil_scale(combined);
            if (cell.lmi_existence == LmiRegion::Feasible) {
                // A non-existence certificate certifies the constrained
                // problem too: pad the sharing multipliers with zeros.
                Eigen::VectorXd warm = Eigen::VectorXd::Zero(combined.size());
                warm.head(eq_sys.size()) = existence.multipliers.t;
                ps_opts.warm_start = std::move(warm);
            }
            const CertificateOutcome sharing = find_certificate(combined, ps_opts);
            cell.lmi_powersharing = sharing.verdict == CertificateVerdict::CertificateFound
                                        ? LmiRegion::Feasible
                                        : LmiRegion::NotFound;
        }

        std::vector<Equilibrium> found;
        if (spec.analyses.newton || spec.analyses.stability) {
            MultistartOptions ms;
            ms.n_starts = opts.newton_starts;
            ms.seed = derive_seed(cell_seed, 2);
            found = multistart_solve(model.reduced, ms);
            if (spec.analyses.newton) {
                cell.newton = found.empty() ? NewtonRegion::None : NewtonRegion::Found;
            }
        }
        if (spec.analyses.stability) {
            if (found.empty()) {
                cell.stability = StabilityRegion::Skipped;
            } else {
                switch (classify(model, found.front().v_star, -1.0, opts.jacobian)
                            .classification) {
                    case StabilityClass::AsymptoticallyStable:
                        cell.stability = StabilityRegion::Stable;
                        break;
                    case StabilityClass::Unstable:
                        cell.stability = StabilityRegion::Unstable;
                        break;
                    case StabilityClass::Inconclusive:
                        cell.stability = StabilityRegion::Inconclusive;
                        break;
                }
            }
        }

        cell.consistency_flag =
            cell.lmi_existence == LmiRegion::Feasible && cell.newton == NewtonRegion::Found;
        cells[index] = std::move(cell);
    };

    // Cells are independent work items; a bounded pool claims them by index
    // and the results land in grid order, so any pool size gives the same
    // output.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(opts.threads > 0 ? static_cast<unsigned>(opts.threads) : hw,
                              total);
    if (workers <= 1) {
        for (std::size_t index = 0; index < total; ++index) evaluate_cell(index);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;
        const auto work = [&] {
            while (true) {
                const std::size_t index = next.fetch_add(1);
                if (index >= total) return;
                try {
                    evaluate_cell(index);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(total);
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    result.cells = std::move(cells);
    for (const auto& cell : result.cells) {
        if (cell.consistency_flag) ++result.violations;
    }
    return result;
}

namespace {

std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_region_csv(const SweepResult& result, std::ostream& out) {
    for (std::size_t a = 0; a < result.axis_names.size(); ++a) {
        const auto& axis = result.axis_values[a];
        out << "# axis," << result.axis_names[a] << ',' << axis.size() << ','
            << fmt17(axis.front()) << ',' << fmt17(axis.back()) << '\n';
    }
    for (const auto& name : result.axis_names) out << name << ',';
    out << "lmi_existence,lmi_powersharing,newton,stability,consistency_flag\n";

    std::size_t feasible = 0, not_found = 0;
    std::size_t ps_feasible = 0, ps_not_found = 0, ps_skipped = 0;
    std::size_t nw_found = 0, nw_none = 0, nw_skipped = 0;
    std::size_t st_stable = 0, st_unstable = 0, st_inconclusive = 0, st_skipped = 0;
    for (const auto& cell : result.cells) {
        for (const double v : cell.values) out << fmt17(v) << ',';
        out << to_string(cell.lmi_existence) << ',' << to_string(cell.lmi_powersharing)
            << ',' << to_string(cell.newton) << ',' << to_string(cell.stability) << ','
            << (cell.consistency_flag ? 1 : 0) << '\n';
        (cell.lmi_existence == LmiRegion::Feasible ? feasible : not_found)++;
        if (cell.lmi_powersharing == LmiRegion::Feasible) ++ps_feasible;
        else if (cell.lmi_powersharing == LmiRegion::NotFound) ++ps_not_found;
        else ++ps_skipped;
        if (cell.newton == NewtonRegion::Found) ++nw_found;
        else if (cell.newton == NewtonRegion::None) ++nw_none;
        else ++nw_skipped;
        if (cell.stability == StabilityRegion::Stable) ++st_stable;
        else if (cell.stability == StabilityRegion::Unstable) ++st_unstable;
        else if (cell.stability == StabilityRegion::Inconclusive) ++st_inconclusive;
        else ++st_skipped;
    }
    out << "# summary,count,lmi_existence,FEASIBLE," << feasible << '\n';
    out << "# summary,count,lmi_existence,NOT_FOUND," << not_found << '\n';
    out << "# summary,count,lmi_powersharing,FEASIBLE," << ps_feasible << '\n';
    out << "# summary,count,lmi_powersharing,NOT_FOUND," << ps_not_found << '\n';
    out << "# summary,count,lmi_powersharing,SKIPPED," << ps_skipped << '\n';
    out << "# summary,count,newton,FOUND," << nw_found << '\n';
    out << "# summary,count,newton,NONE," << nw_none << '\n';
    out << "# summary,count,newton,SKIPPED," << nw_skipped << '\n';
    out << "# summary,count,stability,STABLE," << st_stable << '\n';
    out << "# summary,count,stability,UNSTABLE," << st_unstable << '\n';
    out << "# summary,count,stability,INCONCLUSIVE," << st_inconclusive << '\n';
    out << "# summary,count,stability,SKIPPED," << st_skipped << '\n';
    out << "# summary,components,FEASIBLE," << count_components(result, LmiRegion::Feasible)
        << '\n';
    out << "# summary,components,NOT_FOUND,"
        << count_components(result, LmiRegion::NotFound) << '\n';
    out << "# summary,violations," << result.violations << '\n';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

SweepResult read_region_csv(std::istream& in) {
    SweepResult result;
    std::string line;
    bool header_seen = false;
    std::size_t n_axes = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# axis,", 0) == 0) {
            const auto fields = split_csv(line);
            if (fields.size() != 5) throw Error(ErrorCode::ParseError, "bad axis line");
            result.axis_names.push_back(fields[1]);
            const int steps = std::stoi(fields[2]);
            if (steps < 2) throw Error(ErrorCode::ParseError, "axis needs steps >= 2");
            result.axis_values.push_back(
                linspace(std::stod(fields[3]), std::stod(fields[4]), steps));
            continue;
        }
        if (line.rfind("# summary,", 0) == 0) continue;
        if (line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            n_axes = result.axis_names.size();
            if (n_axes == 0 || n_axes > 2) {
                throw Error(ErrorCode::ParseError, "region CSV needs 1 or 2 axis lines");
            }
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != n_axes + 5) {
            throw Error(ErrorCode::ParseError, "region row has the wrong field count");
        }
        RegionCell cell;
        for (std::size_t a = 0; a < n_axes; ++a) cell.values.push_back(std::stod(fields[a]));
        cell.lmi_existence = lmi_region_from_string(fields[n_axes]);
        cell.lmi_powersharing = lmi_region_from_string(fields[n_axes + 1]);
        cell.newton = newton_region_from_string(fields[n_axes + 2]);
        cell.stability = stability_region_from_string(fields[n_axes + 3]);
        cell.consistency_flag = fields[n_axes + 4] == "1";
        if (cell.consistency_flag) ++result.violations;
        result.cells.push_back(std::move(cell));
    }
    if (!header_seen || result.cells.size() != result.expected_cells()) {
        throw Error(ErrorCode::ParseError, "region CSV is truncated or inconsistent");
    }
    return result;
}

int count_components(const SweepResult& result, LmiRegion verdict) {
    const std::size_t n0 = result.axis_values.empty() ? 0 : result.axis_values[0].size();
    const std::size_t n1 =
        result.axis_values.size() == 2 ? result.axis_values[1].size() : 1;
    if (n0 * n1 != result.cells.size()) return 0;

    std::vector<char> seen(result.cells.size(), 0);
    int components = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < result.cells.size(); ++start) {
        if (seen[start] || result.cells[start].lmi_existence != verdict) continue;
        ++components;
        stack.push_back(start);
        seen[start] = 1;
        while (!stack.empty()) {
            const std::size_t at = stack.back();
            stack.pop_back();
            const std::size_t r = at / n1, c = at % n1;
            const auto visit = [&](std::size_t rr, std::size_t cc) {
                const std::size_t idx = rr * n1 + cc;
                if (!seen[idx] && result.cells[idx].lmi_existence == verdict) {
                    seen[idx] = 1;
                    stack.push_back(idx);
                }
            };
            if (r > 0) visit(r - 1, c);
            if (r + 1 < n0) visit(r + 1, c);
            if (c > 0) visit(r, c - 1);
            if (c + 1 < n1) visit(r, c + 1);
        }
    }
    return components;
}

}  // namespace hvdc
