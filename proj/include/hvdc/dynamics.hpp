#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

#include "hvdc/models.hpp"

namespace hvdc {

enum class SimStatus { Completed, Aborted };
enum class SimEventKind { VoltageFloor, StepFailure };

std::string to_string(SimStatus s);
std::string to_string(SimEventKind k);

struct SimEvent {
    double time = 0.0;
    SimEventKind kind = SimEventKind::VoltageFloor;
};

struct SimTrace {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;  // one row per sample
    std::vector<SimEvent> events;
    SimStatus final_status = SimStatus::Completed;
};

/// Right-hand side of the interconnected capacitor/line model with the
/// constant power devices substituted as currents P_ref / v. Throws
/// VOLTAGE_FLOOR when any capacitor voltage is at or below
/// v_floor_frac * v_nom, where the CPD law stops being meaningful.
Eigen::VectorXd vector_field_full(const FullModel& model, const Eigen::VectorXd& x,
                                  double v_floor_frac = 0.05);

/// Short-line limit: lines eliminated into the Laplacian coupling.
Eigen::VectorXd vector_field_reduced(const ReducedModel& model, const Eigen::VectorXd& v,
                                     double v_floor_frac = 0.05);

enum class IntegrationMethod { Rk4, Rk45 };

struct IntegrateOptions {
    IntegrationMethod method = IntegrationMethod::Rk45;
    double dt = 1e-4;        // rk4 step; initial step for rk45
    double tol = 1e-8;       // rk45 relative accuracy
    double max_step = 0.0;   // rk45 clamp; <=0: (t1-t0)/64
    double v_floor_frac = 0.05;
    long max_steps = 2'000'000;
};

/// Integrates the model over [t0, t1]. Floor crossings and step-controller
/// underflow abort the trace with a typed event instead of throwing.
SimTrace integrate(const FullModel& model, const Eigen::VectorXd& x0, double t0, double t1,
                   const IntegrateOptions& opts = {});
SimTrace integrate(const ReducedModel& model, const Eigen::VectorXd& v0, double t0, double t1,
                   const IntegrateOptions& opts = {});

/// CSV layout: header "t,<state names>", one row per sample, events appended
/// as comment lines "# event,<t>,<kind>".
void write_trace_csv(const SimTrace& trace, const std::vector<std::string>& state_names,
                     std::ostream& out);

}  // namespace hvdc
