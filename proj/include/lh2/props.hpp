#pragma once

#include <iosfwd>

namespace lh2::props {

// Marker values for FluidState::quality outside the two-phase dome.
inline constexpr double kQualitySubcooled = -1.0;
inline constexpr double kQualitySuperheated = 2.0;

// Thermodynamic state of parahydrogen.  quality is the vapor mass fraction
// in [0,1] for two-phase states and one of the markers above otherwise.
struct FluidState {
    double pressure = 0.0;     // Pa
    double temperature = 0.0;  // K
    double density = 0.0;      // kg/m3
    double enthalpy = 0.0;     // J/kg
    double entropy = 0.0;      // J/(kg K)
    double quality = 0.0;
};

struct SaturationPoint {
    double pressure = 0.0;     // Pa
    double temperature = 0.0;  // K
    FluidState liquid;
    FluidState vapor;
};

// Saturation-table pressure bounds, Pa.
double min_pressure();
double max_pressure();
// Temperature bounds of the saturation table, K.
double min_temperature();
double max_temperature();

double sat_temperature(double pressure);         // Pa -> K
double sat_pressure(double temperature);         // K  -> Pa
SaturationPoint sat_point(double pressure);      // keyed by pressure
SaturationPoint sat_point_t(double temperature); // keyed by temperature

// Subcooled/compressed liquid at (P, h); states with h above the saturated
// liquid enthalpy come back as two-phase via the lever rule.  h above the
// saturated vapor enthalpy is a phase error.
FluidState liquid_state(double pressure, double enthalpy);

// Saturated or superheated vapor.
FluidState vapor_state(double pressure, double temperature);
FluidState vapor_state_by_enthalpy(double pressure, double enthalpy);

// Temperature-only lookups; cheaper than building a full FluidState when
// only the thermal coupling matters (pipe wall exchange).
double liquid_temperature(double pressure, double enthalpy);
double vapor_temperature_by_enthalpy(double pressure, double enthalpy);

// Two-phase mixture at saturation, x = vapor mass fraction in [0,1].
FluidState two_phase_state(double pressure, double quality);

// Transport correlations (dilute data fits; see implementation notes).
double liquid_viscosity(double temperature);  // Pa s
double vapor_viscosity(double temperature);   // Pa s

// Audit dump of the embedded saturation grid:
// P,T_sat,rho_l,rho_v,h_l,h_v,s_l,s_v one row per knot.
void write_saturation_csv(std::ostream& os);

}  // namespace lh2::props
