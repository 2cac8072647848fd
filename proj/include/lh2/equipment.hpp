// Component models for the transfer train: two-phase storage tanks, a
// variable-speed centrifugal pump, discretized vacuum-insulated pipelines,
// and throttling/routing valves.  Everything here is a pure function of its
// arguments; the model structs are immutable once configured.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lh2/props.hpp"

namespace lh2::eq {

struct TankGeometry {
    double volume = 0.0;                // m3
    double surface_area = 0.0;          // m2
    double overall_u = 0.0;             // W/(m2 K)
    double ambient_t = 298.15;          // K
    double max_working_pressure = 0.0;  // Pa

    // Spherical tank of the given volume; surface area follows from V.
    static TankGeometry sphere(double volume, double overall_u,
                               double ambient_t, double max_working_pressure);
};

struct TankState {
    double total_mass = 0.0;             // kg
    double total_internal_energy = 0.0;  // J
};

struct TankIntensive {
    double pressure = 0.0;               // Pa
    double temperature = 0.0;            // K
    double quality = 0.0;                // vapor mass fraction
    double liquid_volume = 0.0;          // m3
    double liquid_level_fraction = 0.0;  // liquid_volume / tank volume
};

// Raised when no equilibrium state inside the property tables matches the
// requested (mass, energy, volume).  Residuals are J of energy mismatch at
// the cold and hot ends of the searched interval.
class FlashError : public std::runtime_error {
  public:
    FlashError(const std::string& msg, double cold, double hot)
        : std::runtime_error(msg), residual_cold(cold), residual_hot(hot) {}
    double residual_cold;
    double residual_hot;
};

// Equilibrium state of a rigid tank from (M, U, V).  Solves the saturation
// temperature whose volume-constrained quality matches the energy content;
// falls back to single-phase compressed liquid or superheated vapor when the
// contents leave the dome.  temperature_hint (K, 0 = none) warm-starts the
// bracketing.
TankIntensive tank_flash(const TankState& state, const TankGeometry& geometry,
                         double temperature_hint = 0.0);

// Inverse of tank_flash for two-phase states; used by round-trip tests.
TankState tank_reconstruct(const TankIntensive& intensive,
                           const TankGeometry& geometry);

struct TankStreams {
    double liquid_in = 0.0;     // kg/s
    double liquid_in_h = 0.0;   // J/kg
    double liquid_out = 0.0;    // kg/s, drawn at saturated liquid enthalpy
    double vapor_in = 0.0;      // kg/s
    double vapor_in_h = 0.0;    // J/kg
    double vapor_out = 0.0;     // kg/s, drawn at saturated vapor enthalpy
    double heat_ingress = 0.0;  // W
};

struct TankDerivatives {
    double mass_rate = 0.0;    // kg/s
    double energy_rate = 0.0;  // W
};

TankDerivatives tank_derivatives(const TankIntensive& intensive,
                                 const TankStreams& streams);

// SI heat-leak model Q = (T_amb - T_fluid) * A * U.
double tank_heat_ingress(const TankGeometry& geometry, double fluid_t);

// Boil-off rate in %/day for a tank with the given ullage fraction.
double boil_off_rate(const TankGeometry& geometry, double heat_w,
                     const props::SaturationPoint& sat, double ullage);

struct PumpModel {
    double ref_speed = 60.0;          // Hz
    double min_speed = 25.0;          // Hz
    double max_speed = 60.0;          // Hz
    double best_point_flow = 3250.0;  // m3/h at ref speed
    double best_point_dp = 2.0e5;     // Pa at ref speed
    double shutoff_head_ratio = 1.25;
    double peak_efficiency = 0.60;
    double efficiency_droop = 0.40;   // quadratic falloff vs reduced flow
    double efficiency_floor = 0.05;
};

double pump_dp(double flow_m3h, double speed_hz, const PumpModel& model);
double pump_efficiency(double flow_m3h, double speed_hz,
                       const PumpModel& model);

struct PumpOutlet {
    props::FluidState outlet;
    double shaft_power = 0.0;  // W
    bool efficiency_floored = false;
};

// Pressure rise and loss heating applied to the inlet stream.  All shaft
// losses end up in the fluid (the pump is submerged).
PumpOutlet pump_outlet(const props::FluidState& inlet, double flow_m3h,
                       double speed_hz, const PumpModel& model);

struct PipeLine {
    double length = 0.0;             // m
    double internal_diameter = 0.0;  // m
    double roughness = 0.0;          // m
    double heat_ingress_per_m = 0.0; // W/m
    int n_cells = 20;
    int parallel_count = 1;
    double wall_heat_capacity_per_m = 0.0;   // J/(K m)
    double wall_fluid_conductance_per_m = 0.0;  // W/(K m)
    bool vapor_service = false;
    double cell_holdup_mass = 0.0;   // kg per cell, frozen at construction
    double wall_t_cap = 1e9;         // K, ceiling for stagnant warm-up

    double flow_area() const;
    double cell_length() const { return length / n_cells; }
};

// Fills in cell_holdup_mass from a representative density and checks the
// geometric fields.
PipeLine make_pipeline(double length, double diameter, double roughness,
                       double heat_ingress_per_m, int n_cells,
                       int parallel_count, double wall_heat_capacity_per_m,
                       double wall_fluid_conductance_per_m, bool vapor_service,
                       double reference_density);

// Darcy friction factor: Swamee-Jain above Re 4000, 64/Re below 2300, linear
// blend between.
double friction_factor(double reynolds, double relative_roughness);

// Frictional pressure drop of one pipe at the given per-pipe mass flow.
double pipe_pressure_drop(const PipeLine& pipe, double mdot_per_pipe,
                          const props::FluidState& state);

// Upwind advection of enthalpy through the cells plus wall heat exchange.
// Ambient ingress lands on the wall node; the wall couples to the fluid
// through a fixed conductance.  Arrays are n_cells long.  The optional
// outputs return per-cell temperatures and the heat actually absorbed from
// outside by this line (W), which differs from ingress when the wall cap
// clips a stagnant warm-up.
void pipe_cell_derivatives(const PipeLine& pipe, const double* cell_h,
                           const double* wall_t, double mdot_per_pipe,
                           double inlet_h, double pressure, double* dh_dt,
                           double* dwall_t_dt, double* cell_t_out = nullptr,
                           double* external_heat_w = nullptr);

// Cell temperatures for the current pressure, used by the wall coupling and
// by diagnostics.
void pipe_cell_temperatures(const PipeLine& pipe, const double* cell_h,
                            double pressure, double* cell_t);

enum class ValveCharacteristic : std::uint8_t { kLinear, kEqualPercentage };

struct ValveModel {
    double flow_coefficient = 0.0;  // (kg/s) / sqrt(Pa kg/m3) at full open
    ValveCharacteristic characteristic = ValveCharacteristic::kLinear;
    double rangeability = 50.0;
};

// Installed fraction of the full-open coefficient at this opening.
double valve_flow_fraction(const ValveModel& model, double opening);

// Mass flow through the valve; no reverse flow, isenthalpic expansion.
double valve_flow(const ValveModel& model, double opening,
                  const props::FluidState& upstream, double p_down);

}  // namespace lh2::eq
