#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lh2/config.hpp"
#include "lh2/control.hpp"
#include "lh2/equipment.hpp"
#include "lh2/props.hpp"

namespace lh2::sim {

// Actuator values held between controller updates.
struct Actuators {
    double pump_speed = 0.0;        // Hz
    double throttle_opening = 0.0;
    double return_opening = 0.0;
    double liquefier_opening = 0.0;
};

// Quasi-steady solution of the liquid train at one instant.
struct NetworkSolution {
    double mass_flow = 0.0;         // kg/s, whole train
    double volume_flow = 0.0;       // m3/h at suction density
    double pump_dp = 0.0;           // Pa
    double pipe_dp = 0.0;           // Pa
    double valve_dp = 0.0;          // Pa
    bool starved = false;           // no positive-flow solution exists
};

struct StatePoint {
    double pressure = 0.0;          // Pa
    double temperature = 0.0;       // K
    double enthalpy = 0.0;          // J/kg
    double entropy = 0.0;           // J/(kg K)
};

struct TrajectoryStep {
    double time = 0.0;              // s
    double onshore_pressure = 0.0, seaborne_pressure = 0.0;      // Pa
    double onshore_liquid_volume = 0.0, seaborne_liquid_volume = 0.0;  // m3
    double volume_flow = 0.0;       // m3/h
    double mass_flow = 0.0;         // kg/s
    double bog_flow = 0.0;          // kg/s to the liquefier
    double return_flow = 0.0;       // kg/s vapor back to shore
    double pump_speed = 0.0;        // Hz
    double throttle_opening = 0.0, return_opening = 0.0, liquefier_opening = 0.0;
    double shaft_power = 0.0;       // W
    StatePoint point1, point2, point3, point4;  // pump in/out, valve in/out
    double sigma_pump = 0.0, sigma_pipe = 0.0, sigma_valve = 0.0;  // W/K
    bool starved = false;
    bool efficiency_floored = false;
};

enum class StopReason { kTargetFill, kTimeLimit };

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    StopReason stop_reason = StopReason::kTargetFill;
    double elapsed = 0.0;           // s
    // integrator-accurate quadratures used by the audits
    double bog_mass = 0.0;          // kg through the liquefier port
    double shaft_energy = 0.0;      // J
    double heat_in = 0.0;           // J absorbed from ambient, tanks and pipes
    double bog_enthalpy_out = 0.0;  // J exported with the liquefier stream
    double initial_mass = 0.0, final_mass = 0.0;      // kg, tanks + lines
    double initial_energy = 0.0, final_energy = 0.0;  // J, see energy audit
};

struct KpiRecord {
    double relative_bog = 0.0;       // wt% of the reference transferred parcel
    double relative_power = 0.0;     // kJ/m3 of the reference volume
    double mean_bog_flow = 0.0;      // kg/s
    double max_bog_flow = 0.0;       // kg/s
    double filling_time = 0.0;       // h
    double total_bog = 0.0;          // t
    double total_shaft_energy = 0.0; // MWh
    bool completed = true;           // reached the target fill
};

struct EntropyReport {
    // production rates at the reporting snapshot, W/K
    double pump_rate = 0.0, pipe_rate = 0.0, valve_rate = 0.0, total_rate = 0.0;
    // integrated over the run, J/K
    double pump_integrated = 0.0, pipe_integrated = 0.0, valve_integrated = 0.0,
           total_integrated = 0.0;
    // exergy destruction, dead-state temperature times the above
    double pump_exergy_rate = 0.0, pipe_exergy_rate = 0.0,
           valve_exergy_rate = 0.0, total_exergy_rate = 0.0;          // W
    double pump_exergy = 0.0, pipe_exergy = 0.0, valve_exergy = 0.0,
           total_exergy = 0.0;                                        // J
    bool steady = false;  // snapshot taken with a settled train flow
};

struct TsDiagram {
    StatePoint point1, point2, point3, point4;
    bool steady = false;
};

class SimulationError : public std::runtime_error {
  public:
    SimulationError(const std::string& what, double time,
                    std::vector<double> state)
        : std::runtime_error(what), time_(time), state_(std::move(state)) {}
    double time() const { return time_; }
    const std::vector<double>& state() const { return state_; }

  private:
    double time_;
    std::vector<double> state_;
};

// One loading train: tanks, pump, lines, valves, plus the state-vector
// layout used by the integrator.  Mutable scratch keeps the flash warm
// between evaluations; results never depend on it.
class Flowsheet {
  public:
    explicit Flowsheet(const cfg::ScenarioConfig& config);

    const cfg::ScenarioConfig& config() const { return config_; }
    const eq::TankGeometry& onshore_geometry() const { return onshore_geom_; }
    const eq::TankGeometry& seaborne_geometry() const { return seaborne_geom_; }
    const eq::PipeLine& liquid_line() const { return liquid_line_; }
    const eq::PipeLine& vapor_line() const { return vapor_line_; }

    // state vector layout
    int state_size() const { return n_states_; }
    int liquid_h_offset() const { return 4; }
    int liquid_wall_offset() const { return 4 + liquid_line_.n_cells; }
    int vapor_h_offset() const { return 4 + 2 * liquid_line_.n_cells; }
    int vapor_wall_offset() const {
        return vapor_h_offset() + vapor_line_.n_cells;
    }
    int quadrature_offset() const {
        return vapor_wall_offset() + vapor_line_.n_cells;
    }

    // Initial condition: saturated tanks at their configured fills, liquid
    // line at the steady profile for the nominal flow set-point, walls 20 K.
    std::vector<double> initial_state() const;

    // Steady per-cell enthalpy profile by successive substitution.
    static std::vector<double> steady_cell_profile(const eq::PipeLine& pipe,
                                                   double mdot_per_line,
                                                   double inlet_h);

    NetworkSolution solve_network(const props::FluidState& suction,
                                  double p_seaborne, double pump_speed,
                                  double throttle_opening) const;

    double vapor_return_flow(const props::FluidState& seaborne_vapor,
                             double p_onshore, double opening) const;

    // Everything the integrator and the recorder need at one instant.
    struct Instant {
        eq::TankIntensive onshore, seaborne;
        props::SaturationPoint onshore_sat, seaborne_sat;
        NetworkSolution network;
        double bog_flow = 0.0, return_flow = 0.0;  // kg/s
        double shaft_power = 0.0;                  // W
        bool efficiency_floored = false;
        StatePoint point1, point2, point3, point4;
        double sigma_pump = 0.0, sigma_pipe = 0.0, sigma_valve = 0.0;
        double heat_rate = 0.0;                    // W absorbed from ambient
    };

    // Fills dx (state_size) and returns the instant snapshot.
    Instant derivatives(const double* x, const Actuators& act, double* dx) const;

    // Audit quantities for the conservation checks.
    double stored_mass(const double* x) const;
    double stored_energy(const double* x) const;

    eq::ValveModel throttle_valve, return_valve, liquefier_valve;

  private:
    cfg::ScenarioConfig config_;
    eq::TankGeometry onshore_geom_, seaborne_geom_;
    eq::PipeLine liquid_line_, vapor_line_;
    int n_states_ = 0;
    mutable double onshore_t_hint_ = 0.0, seaborne_t_hint_ = 0.0;
    mutable std::vector<double> scratch_;
};

Trajectory simulate(const cfg::ScenarioConfig& config);

KpiRecord compute_kpis(const Trajectory& trajectory,
                       const cfg::ScenarioConfig& config);

EntropyReport entropy_report(const Trajectory& trajectory,
                             const cfg::ScenarioConfig& config);

TsDiagram ts_diagram(const Trajectory& trajectory);

struct SweepRow {
    double value = 0.0;
    std::string mode;
    KpiRecord kpi;
    bool failed = false;
    std::string error;
};

// parameter: "seaborne-pressure" (moves max working, set-point and initial
// pressure together), "flow-set-point", or "mode" (runs both, values ignored).
std::vector<SweepRow> sweep(const cfg::ScenarioConfig& base,
                            const std::string& parameter,
                            const std::vector<double>& values);

}  // namespace lh2::sim
