#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lh2/equipment.hpp"

namespace lh2::cfg {

struct TankSettings {
    double volume = 0.0;                // m3, spherical shell
    double overall_u = 0.0;             // W/(m2 K) referenced to ambient
    double ambient_temperature = 298.15;
    double max_working_pressure = 0.0;  // Pa
    double initial_fill = 0.0;          // liquid volume fraction at t = 0
    double initial_pressure = 0.0;      // Pa, saturated state at t = 0
    double pressure_set_point = 0.0;    // Pa, target for the tank's pressure loop
    double stop_fill = 1.0;             // halt the transfer at this liquid fraction
};

struct PipeSettings {
    double length = 0.0;                // m, per line
    double internal_diameter = 0.0;     // m
    double roughness = 0.0;             // m
    double heat_ingress_per_m = 0.0;    // W/m per line
    int cells = 1;
    int parallel_lines = 1;
    double wall_heat_capacity_per_m = 0.0;   // J/(K m)
    double wall_conductance_per_m = 0.0;     // W/(K m)
    double wall_temperature_cap = 0.0;       // K, ceiling on stagnant warm-up
};

struct ValveSettings {
    double flow_coefficient = 0.0;      // kg/s per sqrt(Pa kg/m3) at full open
    std::string characteristic = "linear";
    double rangeability = 50.0;
};

// Plant model identified by open-loop step tests. plant_tau == 0 marks an
// integrating response; plant_gain is then the rate gain (PV/s per unit output).
struct LoopSettings {
    double plant_gain = 0.0;
    double plant_tau = 0.0;             // s
    double plant_theta = 0.0;           // s
    double closed_loop_tc = 1.0;        // s, tuning knob
    double setpoint_weight = 0.5;
};

struct ControlSettings {
    std::string mode = "split-range";   // or "fixed-speed"
    double flow_set_point = 0.0;        // m3/h
    double split_point = 0.5;
    double sample_interval = 1.0;       // s, controller communication interval
    LoopSettings flow_loop, onshore_pressure_loop, seaborne_pressure_loop;
};

struct UgsaRange {
    double lo = 0.0;
    double hi = 0.0;
};

struct UgsaSettings {
    int samples = 1000;
    int bootstrap_resamples = 100;
    std::uint64_t seed = 20260;
    UgsaRange peak_efficiency, pipe_heat, roughness, flow_set_point;
    UgsaRange bor_onshore, bor_seaborne;  // %/day
};

struct RunSettings {
    double rel_tol = 1e-6;
    double max_step = 5.0;              // s
    double time_limit = 108000.0;       // s
    double fill_reference_mass = 2.812e6;    // kg, relative boil-off denominator
    double fill_reference_volume = 40000.0;  // m3, relative power denominator
    std::string out_dir = "runs";
};

struct ScenarioConfig {
    TankSettings onshore, seaborne;
    eq::PumpModel pump;
    PipeSettings liquid_pipe, vapor_pipe;
    ValveSettings throttle_valve, vapor_return_valve, liquefier_valve;
    double liquefier_pressure = 1.03e5;      // Pa, boundary behind the boil-off valve
    ControlSettings control;
    double dead_state_temperature = 298.15;  // K, exergy reference
    UgsaSettings ugsa;
    RunSettings run;
};

ScenarioConfig default_config();

// Parses the key = value subset of TOML used by the shipped files: [dotted.section]
// headers, numbers, quoted strings, booleans, flat numeric arrays, # comments.
// Throws std::invalid_argument with the offending line on malformed input.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Builds a config from optional file text plus "section.key=value" overrides.
// Unknown keys and out-of-range values raise std::invalid_argument naming them.
ScenarioConfig load_config(const std::string& file_text,
                           const std::vector<std::string>& overrides);

std::string serialize_config(const ScenarioConfig& config);
void validate_config(const ScenarioConfig& config);

eq::ValveCharacteristic valve_characteristic(const ValveSettings& valve);
eq::ValveModel make_valve(const ValveSettings& valve);

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t config_hash(const ScenarioConfig& config) {
    return fnv1a64(serialize_config(config));
}

}  // namespace lh2::cfg
