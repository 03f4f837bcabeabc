#include "hvdc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "hvdc/errors.hpp"

namespace hvdc {

std::string to_string(SimStatus s) {
    return s == SimStatus::Completed ? "COMPLETED" : "ABORTED";
}

std::string to_string(SimEventKind k) {
    return k == SimEventKind::VoltageFloor ? "VOLTAGE_FLOOR" : "STEP_FAILURE";
}

Eigen::VectorXd vector_field_full(const FullModel& model, const Eigen::VectorXd& x,
                                  double v_floor_frac) {
    const ReducedModel& red = model.reduced;
    const int p = red.n_pq, v = red.n_vc, t = model.n_lines();
    if (x.size() != p + v + t) {
        throw Error(ErrorCode::DimensionMismatch, "state does not match model dimension");
    }
    const double floor = v_floor_frac * red.v_nom;
    if (p + v > 0 && x.head(p + v).minCoeff() <= floor) {
        throw Error(ErrorCode::VoltageFloor,
                    "capacitor voltage at or below the constant-power floor");
    }

    const auto v_p = x.head(p);
    const auto v_v = x.segment(p, v);
    const auto i_t = x.tail(t);

    Eigen::VectorXd dx(p + v + t);
    dx.head(p) = (-red.G_P.cwiseProduct(v_p) - model.B_P * i_t +
                  red.P_P_ref.cwiseQuotient(v_p))
                     .cwiseQuotient(red.C_P);
    dx.segment(p, v) = (-(red.G_V + red.G_Z).cwiseProduct(v_v) + red.u_bar_V -
                        model.B_V * i_t + red.P_V_ref.cwiseQuotient(v_v))
                           .cwiseQuotient(red.C_V);
    dx.tail(t) = (model.B_P.transpose() * v_p + model.B_V.transpose() * v_v -
                  model.R_T.cwiseProduct(i_t))
                     .cwiseQuotient(model.L_T);
    return dx;
}

Eigen::VectorXd vector_field_reduced(const ReducedModel& model, const Eigen::VectorXd& v,
                                     double v_floor_frac) {
    if (v.size() != model.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "state does not match model dimension");
    }
    const double floor = v_floor_frac * model.v_nom;
    if (v.minCoeff() <= floor) {
        throw Error(ErrorCode::VoltageFloor,
                    "capacitor voltage at or below the constant-power floor");
    }
    const Eigen::VectorXd coupled = model.coupling() * v;
    return (-coupled + model.source_stack() + model.power_ref_stack().cwiseQuotient(v))
        .cwiseQuotient(model.capacitance_stack());
}

namespace {

using Field = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Dormand-Prince 5(4) tableau.
struct Dp45 {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

SimTrace integrate_impl(const Field& field, const Eigen::VectorXd& x0, double t0, double t1,
                        const IntegrateOptions& opts, double scale) {
    SimTrace trace;
    Eigen::VectorXd x = x0;
    double t = t0;

    const auto record = [&trace](double time, const Eigen::VectorXd& state) {
        trace.times.push_back(time);
        trace.states.push_back(state);
    };
    const auto abort_with = [&trace](double time, SimEventKind kind) {
        trace.events.push_back({time, kind});
        trace.final_status = SimStatus::Aborted;
    };

    // The start state itself may already violate the floor.
    try {
        (void)field(x);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::VoltageFloor) {
            record(t, x);
            abort_with(t, SimEventKind::VoltageFloor);
            return trace;
        }
        throw;
    }
    record(t, x);

    if (opts.method == IntegrationMethod::Rk4) {
        const double dt = opts.dt;
        long steps = 0;
        while (t < t1 - 1e-15 * (t1 - t0)) {
            if (++steps > opts.max_steps) {
                abort_with(t, SimEventKind::StepFailure);
                return trace;
            }
            const double h = std::min(dt, t1 - t);
            try {
                const Eigen::VectorXd k1 = field(x);
                const Eigen::VectorXd k2 = field(x + 0.5 * h * k1);
                const Eigen::VectorXd k3 = field(x + 0.5 * h * k2);
                const Eigen::VectorXd k4 = field(x + h * k3);
                x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::VoltageFloor) {
                    abort_with(t, SimEventKind::VoltageFloor);
                    return trace;
                }
                throw;
            }
            t += h;
            if (!x.allFinite()) {
                abort_with(t, SimEventKind::StepFailure);
                return trace;
            }
            record(t, x);
        }
        return trace;
    }

    // Adaptive Dormand-Prince with FSAL.
    const double span = t1 - t0;
    const double max_step = opts.max_step > 0.0 ? opts.max_step : span / 64.0;
    const double h_min = std::max(1e-14 * span, 1e-300);
    double h = std::min({opts.dt, max_step, span});
    Eigen::VectorXd k1 = field(x);  // floor-checked above
    long steps = 0;

    while (t < t1 - 1e-15 * span) {
        if (++steps > opts.max_steps) {
            abort_with(t, SimEventKind::StepFailure);
            return trace;
        }
        h = std::min(h, t1 - t);
        Eigen::VectorXd k2, k3, k4, k5, k6, k7, x_new;
        bool floored = false;
        try {
            k2 = field(x + h * (Dp45::a21 * k1));
            k3 = field(x + h * (Dp45::a31 * k1 + Dp45::a32 * k2));
            k4 = field(x + h * (Dp45::a41 * k1 + Dp45::a42 * k2 + Dp45::a43 * k3));
            k5 = field(x + h * (Dp45::a51 * k1 + Dp45::a52 * k2 + Dp45::a53 * k3 +
                                Dp45::a54 * k4));
            k6 = field(x + h * (Dp45::a61 * k1 + Dp45::a62 * k2 + Dp45::a63 * k3 +
                                Dp45::a64 * k4 + Dp45::a65 * k5));
            x_new = x + h * (Dp45::b1 * k1 + Dp45::b3 * k3 + Dp45::b4 * k4 +
                             Dp45::b5 * k5 + Dp45::b6 * k6);
            k7 = field(x_new);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::VoltageFloor) throw;
            floored = true;
        }

        double err = std::numeric_limits<double>::infinity();
        if (!floored && x_new.allFinite()) {
            const Eigen::VectorXd e_vec =
                h * (Dp45::e1 * k1 + Dp45::e3 * k3 + Dp45::e4 * k4 + Dp45::e5 * k5 +
                     Dp45::e6 * k6 + Dp45::e7 * k7);
            err = 0.0;
            for (int i = 0; i < x.size(); ++i) {
                const double s =
                    opts.tol * (scale + std::max(std::abs(x(i)), std::abs(x_new(i))));
                err = std::max(err, std::abs(e_vec(i)) / s);
            }
        }

        if (err <= 1.0) {
            t += h;
            x = x_new;
            k1 = k7;  // FSAL
            record(t, x);
            h = std::min(max_step, h * std::min(5.0, std::max(0.2, 0.9 * std::pow(err + 1e-300, -0.2))));
        } else {
            if (floored && h <= h_min * 4.0) {
                // The trajectory runs into the floor no matter how small the
                // step: report the crossing rather than a controller failure.
                abort_with(t, SimEventKind::VoltageFloor);
                return trace;
            }
            h *= floored ? 0.25 : std::max(0.1, 0.9 * std::pow(err, -0.2));
            if (h < h_min) {
                abort_with(t, SimEventKind::StepFailure);
                return trace;
            }
        }
    }
    return trace;
}

}  // namespace

SimTrace integrate(const FullModel& model, const Eigen::VectorXd& x0, double t0, double t1,
                   const IntegrateOptions& opts) {
    if (x0.size() != model.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "start state does not match model dimension");
    }
    if (t1 <= t0) {
        throw Error(ErrorCode::InvalidSpec, "time span must be increasing");
    }
    const Field field = [&model, &opts](const Eigen::VectorXd& x) {
        return vector_field_full(model, x, opts.v_floor_frac);
    };
    return integrate_impl(field, x0, t0, t1, opts, model.reduced.v_nom);
}

SimTrace integrate(const ReducedModel& model, const Eigen::VectorXd& v0, double t0, double t1,
                   const IntegrateOptions& opts) {
    if (v0.size() != model.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "start state does not match model dimension");
    }
    if (t1 <= t0) {
        throw Error(ErrorCode::InvalidSpec, "time span must be increasing");
    }
    const Field field = [&model, &opts](const Eigen::VectorXd& v) {
        return vector_field_reduced(model, v, opts.v_floor_frac);
    };
    return integrate_impl(field, v0, t0, t1, opts, model.v_nom);
}

void write_trace_csv(const SimTrace& trace, const std::vector<std::string>& state_names,
                     std::ostream& out) {
    out << "t";
    for (const auto& name : state_names) out << ',' << name;
    out << '\n';
    char buf[32];
    for (std::size_t row = 0; row < trace.times.size(); ++row) {
        std::snprintf(buf, sizeof(buf), "%.17g", trace.times[row]);
        out << buf;
        const Eigen::VectorXd& x = trace.states[row];
        for (int i = 0; i < x.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", x(i));
            out << ',' << buf;
        }
        out << '\n';
    }
    for (const auto& event : trace.events) {
        std::snprintf(buf, sizeof(buf), "%.17g", event.time);
        out << "# event," << buf << ',' << to_string(event.kind) << '\n';
    }
}

}  // namespace hvdc
