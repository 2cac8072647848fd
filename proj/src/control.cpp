#include "lh2/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lh2::ctl {

PidParams simc_tune(const PlantModel& plant, double closed_loop_tc) {
    if (plant.gain == 0.0)
        throw std::invalid_argument("simc_tune: plant gain is zero, loop is uncontrollable");
    if (plant.time_constant <= 0.0)
        throw std::invalid_argument("simc_tune: plant time constant must be positive");
    if (plant.dead_time < 0.0)
        throw std::invalid_argument("simc_tune: dead time must be nonnegative");
    if (closed_loop_tc <= 0.0)
        throw std::invalid_argument("simc_tune: closed-loop time constant must be positive");
    const double horizon = closed_loop_tc + plant.dead_time;
    PidParams p;
    p.gain = plant.time_constant / (plant.gain * horizon);
    p.integral_time = std::min(plant.time_constant, 4.0 * horizon);
    p.derivative_time = 0.0;
    return p;
}

double pid_step(PidState& state, const PidParams& params, double setpoint,
                double pv, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("pid_step: dt must be positive");
    const double s = params.direction == PidDirection::kDirect ? -1.0 : 1.0;
    const double err_i = s * (setpoint - pv);
    const double err_p = s * (params.setpoint_weight * setpoint - pv);
    const double ki = params.gain / params.integral_time;

    double deriv = 0.0;
    if (params.derivative_time > 0.0 && state.primed)
        deriv = -params.gain * params.derivative_time * s *
                (pv - state.previous_pv) / dt;

    const double tentative =
        params.gain * err_p + ki * (state.integral + err_i * dt) + deriv;
    const bool winding_up = tentative > params.output_high && err_i > 0.0;
    const bool winding_down = tentative < params.output_low && err_i < 0.0;
    if (!winding_up && !winding_down) state.integral += err_i * dt;

    const double out =
        std::clamp(params.gain * err_p + ki * state.integral + deriv,
                   params.output_low, params.output_high);
    state.previous_pv = pv;
    state.primed = true;
    state.last_output = out;
    return out;
}

void pid_initialize(PidState& state, const PidParams& params, double setpoint,
                    double pv, double output) {
    const double s = params.direction == PidDirection::kDirect ? -1.0 : 1.0;
    const double err_p = s * (params.setpoint_weight * setpoint - pv);
    const double target =
        std::clamp(output, params.output_low, params.output_high);
    state.integral = (target - params.gain * err_p) * params.integral_time /
                     params.gain;
    state.previous_pv = pv;
    state.primed = true;
    state.last_output = target;
}

SplitRangeOutput split_range_map(double u, const SplitRangeConfig& config) {
    if (config.split_point <= 0.0 || config.split_point >= 1.0)
        throw std::invalid_argument("split_range_map: split point outside (0,1)");
    if (config.min_speed > config.max_speed)
        throw std::invalid_argument("split_range_map: min speed above max speed");
    const double x = std::clamp(u, 0.0, 1.0);
    SplitRangeOutput out;
    if (x <= config.split_point) {
        out.valve_opening = x / config.split_point;
        out.pump_speed = config.min_speed;
    } else {
        out.valve_opening = 1.0;
        out.pump_speed = config.min_speed +
                         (x - config.split_point) / (1.0 - config.split_point) *
                             (config.max_speed - config.min_speed);
    }
    return out;
}

PlantModel fopdt_fit(const std::vector<double>& t, const std::vector<double>& y,
                     double u_before, double u_after) {
    if (t.size() != y.size() || t.size() < 10)
        throw std::invalid_argument("fopdt_fit: need at least 10 aligned samples");
    const double du = u_after - u_before;
    if (du == 0.0)
        throw std::invalid_argument("fopdt_fit: input step is zero");

    const double y0 = y.front();
    const std::size_t tail = std::max<std::size_t>(1, y.size() / 20);
    double y_ss = 0.0;
    for (std::size_t i = y.size() - tail; i < y.size(); ++i) y_ss += y[i];
    y_ss /= static_cast<double>(tail);
    const double dy = y_ss - y0;
    if (dy == 0.0)
        throw std::invalid_argument("fopdt_fit: response never moved");

    auto crossing = [&](double frac) {
        const double target = frac;  // in normalized response units
        for (std::size_t i = 1; i < y.size(); ++i) {
            const double a = (y[i - 1] - y0) / dy;
            const double b = (y[i] - y0) / dy;
            if (a < target && b >= target) {
                const double w = (target - a) / (b - a);
                return t[i - 1] + w * (t[i] - t[i - 1]);
            }
        }
        throw std::invalid_argument(
            "fopdt_fit: response never reaches the fit fraction");
    };
    const double t28 = crossing(0.283);
    const double t63 = crossing(0.632);

    PlantModel m;
    m.gain = dy / du;
    m.time_constant = 1.5 * (t63 - t28);
    m.dead_time = std::max(0.0, t63 - m.time_constant);
    return m;
}

}  // namespace lh2::ctl
