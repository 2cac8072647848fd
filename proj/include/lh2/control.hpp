// PI control with SIMC tuning, anti-windup, split-range actuation, and
// first-order-plus-dead-time step identification.
#pragma once

#include <cstdint>
#include <vector>

namespace lh2::ctl {

enum class PidDirection : std::uint8_t { kReverse, kDirect };

struct PidParams {
    double gain = 1.0;             // output units per PV unit
    double integral_time = 1.0;    // s
    double derivative_time = 0.0;  // s, derivative acts on PV
    double output_low = 0.0;
    double output_high = 1.0;
    PidDirection direction = PidDirection::kReverse;
    // proportional path sees (setpoint_weight * SP - PV); 1 = classic 1-DOF
    double setpoint_weight = 0.5;
};

struct PlantModel {
    double gain = 0.0;           // PV units per output unit
    double time_constant = 0.0;  // s
    double dead_time = 0.0;      // s
};

struct PidState {
    double integral = 0.0;      // accumulated error * time
    double previous_pv = 0.0;
    double last_output = 0.0;
    bool primed = false;        // previous_pv valid
};

// SIMC PI rules: Kc = tau1 / (k (tc + theta)), tauI = min(tau1, 4 (tc+theta)).
PidParams simc_tune(const PlantModel& plant, double closed_loop_tc);

// One controller update; clamps the output and freezes the integral while
// pushing further into a saturated bound.
double pid_step(PidState& state, const PidParams& params, double setpoint,
                double pv, double dt);

// Bumpless start: choose the integral so the next step emits `output` if the
// PV holds still.
void pid_initialize(PidState& state, const PidParams& params, double setpoint,
                    double pv, double output);

struct SplitRangeConfig {
    double split_point = 0.5;
    double min_speed = 25.0;  // Hz
    double max_speed = 60.0;  // Hz
};

struct SplitRangeOutput {
    double valve_opening = 0.0;
    double pump_speed = 0.0;
};

// Low duty: valve throttles at minimum speed.  High duty: valve wide open,
// speed takes over.  Continuous at the split point.
SplitRangeOutput split_range_map(double u, const SplitRangeConfig& config);

// Two-point (28.3% / 63.2%) fit of a step response sampled at times t
// (seconds from the step).  y must start at the pre-step steady value.
PlantModel fopdt_fit(const std::vector<double>& t, const std::vector<double>& y,
                     double u_before, double u_after);

}  // namespace lh2::ctl
