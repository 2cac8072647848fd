#include "lh2/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "lh2/numerics.hpp"

namespace lh2::sim {
namespace {

StatePoint to_point(const props::FluidState& f) {
    return {f.pressure, f.temperature, f.enthalpy, f.entropy};
}

// Train flow is considered settled when the recorded volume flow moved less
// than this between the last two communication intervals, per second.
constexpr double kSteadyFlowSlope = 1.0;  // (m3/h)/s

bool trajectory_steady(const Trajectory& traj) {
    if (traj.steps.size() < 2) return false;
    const TrajectoryStep& a = traj.steps[traj.steps.size() - 2];
    const TrajectoryStep& b = traj.steps.back();
    if (b.starved || b.time <= a.time) return false;
    return std::fabs(b.volume_flow - a.volume_flow) / (b.time - a.time) <
           kSteadyFlowSlope;
}

double trapezoid(const Trajectory& traj, double TrajectoryStep::*channel) {
    double acc = 0.0;
    for (size_t i = 1; i < traj.steps.size(); ++i) {
        const TrajectoryStep& a = traj.steps[i - 1];
        const TrajectoryStep& b = traj.steps[i];
        acc += 0.5 * (a.*channel + b.*channel) * (b.time - a.time);
    }
    return acc;
}

}  // namespace

Flowsheet::Flowsheet(const cfg::ScenarioConfig& config) : config_(config) {
    cfg::validate_config(config_);

    const cfg::TankSettings& ot = config_.onshore;
    const cfg::TankSettings& st = config_.seaborne;
    onshore_geom_ = eq::TankGeometry::sphere(
        ot.volume, ot.overall_u, ot.ambient_temperature, ot.max_working_pressure);
    seaborne_geom_ = eq::TankGeometry::sphere(
        st.volume, st.overall_u, st.ambient_temperature, st.max_working_pressure);

    const props::SaturationPoint ot_sat = props::sat_point(ot.initial_pressure);
    const props::SaturationPoint st_sat = props::sat_point(st.initial_pressure);

    const cfg::PipeSettings& lp = config_.liquid_pipe;
    liquid_line_ = eq::make_pipeline(
        lp.length, lp.internal_diameter, lp.roughness, lp.heat_ingress_per_m,
        lp.cells, lp.parallel_lines, lp.wall_heat_capacity_per_m,
        lp.wall_conductance_per_m, false, ot_sat.liquid.density);
    liquid_line_.wall_t_cap = lp.wall_temperature_cap;

    const cfg::PipeSettings& vp = config_.vapor_pipe;
    vapor_line_ = eq::make_pipeline(
        vp.length, vp.internal_diameter, vp.roughness, vp.heat_ingress_per_m,
        vp.cells, vp.parallel_lines, vp.wall_heat_capacity_per_m,
        vp.wall_conductance_per_m, true, st_sat.vapor.density);
    vapor_line_.wall_t_cap = vp.wall_temperature_cap;

    throttle_valve = cfg::make_valve(config_.throttle_valve);
    return_valve = cfg::make_valve(config_.vapor_return_valve);
    liquefier_valve = cfg::make_valve(config_.liquefier_valve);

    n_states_ = 4 + 2 * liquid_line_.n_cells + 2 * vapor_line_.n_cells + 4;
    onshore_t_hint_ = ot_sat.temperature;
    seaborne_t_hint_ = st_sat.temperature;
    scratch_.assign(std::max(liquid_line_.n_cells, vapor_line_.n_cells), 0.0);
}

std::vector<double> Flowsheet::steady_cell_profile(const eq::PipeLine& pipe,
                                                   double mdot_per_line,
                                                   double inlet_h) {
    if (mdot_per_line <= 0.0) {
        throw std::invalid_argument(
            "steady_cell_profile: nominal per-line flow must be positive");
    }
    const double rise = pipe.heat_ingress_per_m * pipe.cell_length() / mdot_per_line;
    std::vector<double> h(pipe.n_cells, inlet_h);
    for (int pass = 0; pass < 100; ++pass) {
        double worst = 0.0;
        double up = inlet_h;
        for (int i = 0; i < pipe.n_cells; ++i) {
            const double next = up + rise;
            worst = std::max(worst,
                             std::fabs(next - h[i]) / std::max(std::fabs(next), 1.0));
            h[i] = next;
            up = next;
        }
        if (worst < 1e-6) return h;
    }
    throw std::runtime_error("steady_cell_profile: no convergence in 100 passes");
}

std::vector<double> Flowsheet::initial_state() const {
    std::vector<double> x(n_states_, 0.0);

    auto fill_tank = [](const cfg::TankSettings& t, double* mass, double* energy) {
        const props::SaturationPoint sat = props::sat_point(t.initial_pressure);
        const double v_liq = t.initial_fill * t.volume;
        const double v_vap = t.volume - v_liq;
        const double m_liq = v_liq * sat.liquid.density;
        const double m_vap = v_vap * sat.vapor.density;
        const double u_liq = sat.liquid.enthalpy - sat.pressure / sat.liquid.density;
        const double u_vap = sat.vapor.enthalpy - sat.pressure / sat.vapor.density;
        *mass = m_liq + m_vap;
        *energy = m_liq * u_liq + m_vap * u_vap;
    };
    fill_tank(config_.onshore, &x[0], &x[1]);
    fill_tank(config_.seaborne, &x[2], &x[3]);

    const props::SaturationPoint ot_sat =
        props::sat_point(config_.onshore.initial_pressure);
    const props::SaturationPoint st_sat =
        props::sat_point(config_.seaborne.initial_pressure);

    const double liq_per_line = config_.control.flow_set_point / 3600.0 *
                                ot_sat.liquid.density /
                                liquid_line_.parallel_count;
    std::vector<double> lh =
        steady_cell_profile(liquid_line_, liq_per_line, ot_sat.liquid.enthalpy);
    std::copy(lh.begin(), lh.end(), x.begin() + liquid_h_offset());
    std::fill_n(x.begin() + liquid_wall_offset(), liquid_line_.n_cells, 20.0);

    const double vap_per_line = config_.control.flow_set_point / 3600.0 *
                                st_sat.vapor.density / vapor_line_.parallel_count;
    std::vector<double> vh =
        steady_cell_profile(vapor_line_, vap_per_line, st_sat.vapor.enthalpy);
    std::copy(vh.begin(), vh.end(), x.begin() + vapor_h_offset());
    std::fill_n(x.begin() + vapor_wall_offset(), vapor_line_.n_cells, 20.0);

    return x;
}

NetworkSolution Flowsheet::solve_network(const props::FluidState& suction,
                                         double p_seaborne, double pump_speed,
                                         double throttle_opening) const {
    NetworkSolution out;
    const double p_onshore = suction.pressure;
    const double rho = suction.density;
    const double phi = eq::valve_flow_fraction(throttle_valve, throttle_opening);
    const double cv_eff = throttle_valve.flow_coefficient * phi;

    out.pump_dp = eq::pump_dp(0.0, pump_speed, config_.pump);
    const double static_head = p_seaborne - p_onshore;
    if (phi <= 0.0 || out.pump_dp <= static_head) {
        out.starved = true;
        return out;
    }

    auto residual = [&](double mdot) {
        const double q_m3h = mdot / rho * 3600.0;
        const double dp_pump = eq::pump_dp(q_m3h, pump_speed, config_.pump);
        const double dp_pipe =
            mdot > 0.0 ? eq::pipe_pressure_drop(
                             liquid_line_, mdot / liquid_line_.parallel_count,
                             suction)
                       : 0.0;
        const double mv = mdot / cv_eff;
        return dp_pump - dp_pipe - mv * mv / rho - static_head;
    };

    const double r = config_.pump.shutoff_head_ratio;
    double m_hi = config_.pump.best_point_flow *
                  (pump_speed / config_.pump.ref_speed) *
                  std::sqrt(r / (r - 1.0)) * rho / 3600.0;
    for (int i = 0; i < 60 && residual(m_hi) > 0.0; ++i) m_hi *= 2.0;

    const double mdot = num::brent(residual, 0.0, m_hi, 1e-8);
    out.mass_flow = mdot;
    out.volume_flow = mdot / rho * 3600.0;
    out.pump_dp = eq::pump_dp(out.volume_flow, pump_speed, config_.pump);
    out.pipe_dp =
        mdot > 0.0
            ? eq::pipe_pressure_drop(liquid_line_,
                                     mdot / liquid_line_.parallel_count, suction)
            : 0.0;
    const double mv = mdot / cv_eff;
    out.valve_dp = mv * mv / rho;
    return out;
}

double Flowsheet::vapor_return_flow(const props::FluidState& seaborne_vapor,
                                    double p_onshore, double opening) const {
    const double p_seaborne = seaborne_vapor.pressure;
    const double phi = eq::valve_flow_fraction(return_valve, opening);
    if (phi <= 0.0 || p_seaborne <= p_onshore) return 0.0;
    const double rho = seaborne_vapor.density;
    const double cv_eff = return_valve.flow_coefficient * phi;
    const double drive = p_seaborne - p_onshore;

    auto residual = [&](double m) {
        const double mv = m / cv_eff;
        const double dp_pipe =
            m > 0.0 ? eq::pipe_pressure_drop(vapor_line_,
                                             m / vapor_line_.parallel_count,
                                             seaborne_vapor)
                    : 0.0;
        return drive - mv * mv / rho - dp_pipe;
    };

    const double m_valve_only = cv_eff * std::sqrt(drive * rho);
    if (residual(m_valve_only) >= 0.0) return m_valve_only;
    return num::brent(residual, 0.0, m_valve_only, 1e-10);
}

Flowsheet::Instant Flowsheet::derivatives(const double* x, const Actuators& act,
                                          double* dx) const {
    Instant ins;

    ins.onshore = eq::tank_flash({x[0], x[1]}, onshore_geom_, onshore_t_hint_);
    onshore_t_hint_ = ins.onshore.temperature;
    ins.seaborne = eq::tank_flash({x[2], x[3]}, seaborne_geom_, seaborne_t_hint_);
    seaborne_t_hint_ = ins.seaborne.temperature;

    ins.onshore_sat = props::sat_point(ins.onshore.pressure);
    ins.seaborne_sat = props::sat_point(ins.seaborne.pressure);

    const props::FluidState& suction = ins.onshore_sat.liquid;
    ins.network = solve_network(suction, ins.seaborne.pressure, act.pump_speed,
                                act.throttle_opening);
    const double mdot = ins.network.mass_flow;

    const eq::PumpOutlet pump = eq::pump_outlet(suction, ins.network.volume_flow,
                                                act.pump_speed, config_.pump);
    ins.shaft_power = pump.shaft_power;
    ins.efficiency_floored = mdot > 0.0 && pump.efficiency_floored;

    const int nl = liquid_line_.n_cells;
    const int nv = vapor_line_.n_cells;
    const double* lh = x + liquid_h_offset();
    const double* lw = x + liquid_wall_offset();
    const double* vh = x + vapor_h_offset();
    const double* vw = x + vapor_wall_offset();
    double* dlh = dx + liquid_h_offset();
    double* dlw = dx + liquid_wall_offset();
    double* dvh = dx + vapor_h_offset();
    double* dvw = dx + vapor_wall_offset();

    const double p2 = ins.onshore.pressure + ins.network.pump_dp;
    double liquid_line_heat = 0.0;
    eq::pipe_cell_derivatives(liquid_line_, lh, lw,
                              mdot / liquid_line_.parallel_count,
                              pump.outlet.enthalpy, p2, dlh, dlw,
                              scratch_.data(), &liquid_line_heat);

    ins.return_flow =
        vapor_return_flow(ins.seaborne_sat.vapor, ins.onshore.pressure,
                          act.return_opening);
    double vapor_line_heat = 0.0;
    eq::pipe_cell_derivatives(vapor_line_, vh, vw,
                              ins.return_flow / vapor_line_.parallel_count,
                              ins.seaborne_sat.vapor.enthalpy,
                              ins.seaborne.pressure, dvh, dvw, nullptr,
                              &vapor_line_heat);

    ins.bog_flow = eq::valve_flow(liquefier_valve, act.liquefier_opening,
                                  ins.onshore_sat.vapor,
                                  config_.liquefier_pressure);

    const double q_onshore =
        eq::tank_heat_ingress(onshore_geom_, ins.onshore.temperature);
    const double q_seaborne =
        eq::tank_heat_ingress(seaborne_geom_, ins.seaborne.temperature);

    const double liquid_out_h = lh[nl - 1];
    const double vapor_out_h = vh[nv - 1];

    eq::TankStreams ot_streams;
    ot_streams.liquid_out = mdot;
    ot_streams.vapor_in = ins.return_flow;
    ot_streams.vapor_in_h = vapor_out_h;
    ot_streams.vapor_out = ins.bog_flow;
    ot_streams.heat_ingress = q_onshore;
    const eq::TankDerivatives d_ot = eq::tank_derivatives(ins.onshore, ot_streams);
    dx[0] = d_ot.mass_rate;
    dx[1] = d_ot.energy_rate;

    eq::TankStreams st_streams;
    st_streams.liquid_in = mdot;
    st_streams.liquid_in_h = liquid_out_h;
    st_streams.vapor_out = ins.return_flow;
    st_streams.heat_ingress = q_seaborne;
    const eq::TankDerivatives d_st =
        eq::tank_derivatives(ins.seaborne, st_streams);
    dx[2] = d_st.mass_rate;
    dx[3] = d_st.energy_rate;

    const int lines_l = liquid_line_.parallel_count;
    const int lines_v = vapor_line_.parallel_count;
    ins.heat_rate = q_onshore + q_seaborne + lines_l * liquid_line_heat +
                    lines_v * vapor_line_heat;

    const int q0 = quadrature_offset();
    dx[q0] = ins.bog_flow;
    dx[q0 + 1] = ins.shaft_power;
    dx[q0 + 2] = ins.heat_rate;
    dx[q0 + 3] = ins.bog_flow * ins.onshore_sat.vapor.enthalpy;

    // Station records and entropy production of the liquid train.
    ins.point1 = to_point(suction);
    ins.point2 = mdot > 0.0 ? to_point(pump.outlet) : ins.point1;
    const double p3 = p2 - ins.network.pipe_dp;
    const props::FluidState f3 = props::liquid_state(p3, liquid_out_h);
    const props::FluidState f4 =
        props::liquid_state(ins.seaborne.pressure, liquid_out_h);
    ins.point3 = to_point(f3);
    ins.point4 = to_point(f4);

    ins.sigma_pump = mdot * (ins.point2.entropy - ins.point1.entropy);
    ins.sigma_valve = mdot * (ins.point4.entropy - ins.point3.entropy);

    // Pipe production includes thermal storage so transients stay
    // nonnegative; at steady state the storage terms vanish and the value
    // reduces to flow entropy rise minus ingress flux at the mean wall
    // temperature.
    double wall_mean = 0.0;
    for (int i = 0; i < nl; ++i) wall_mean += lw[i];
    wall_mean /= nl;
    const double lc = liquid_line_.cell_length();
    const double cw = liquid_line_.wall_heat_capacity_per_m;
    double storage = 0.0;
    for (int i = 0; i < nl; ++i) {
        storage += liquid_line_.cell_holdup_mass * dlh[i] / scratch_[i];
        storage += cw * lc * dlw[i] / lw[i];
    }
    storage *= lines_l;
    ins.sigma_pipe = mdot * (ins.point3.entropy - ins.point2.entropy) -
                     lines_l * liquid_line_heat / wall_mean + storage;

    return ins;
}

double Flowsheet::stored_mass(const double* x) const {
    return x[0] + x[2] +
           liquid_line_.parallel_count * liquid_line_.n_cells *
               liquid_line_.cell_holdup_mass +
           vapor_line_.parallel_count * vapor_line_.n_cells *
               vapor_line_.cell_holdup_mass;
}

double Flowsheet::stored_energy(const double* x) const {
    double e = x[0 + 1] + x[2 + 1];
    const double* lh = x + liquid_h_offset();
    const double* lw = x + liquid_wall_offset();
    const double lc_l = liquid_line_.cell_length();
    for (int i = 0; i < liquid_line_.n_cells; ++i) {
        e += liquid_line_.parallel_count *
             (liquid_line_.cell_holdup_mass * lh[i] +
              liquid_line_.wall_heat_capacity_per_m * lc_l * lw[i]);
    }
    const double* vh = x + vapor_h_offset();
    const double* vw = x + vapor_wall_offset();
    const double lc_v = vapor_line_.cell_length();
    for (int i = 0; i < vapor_line_.n_cells; ++i) {
        e += vapor_line_.parallel_count *
             (vapor_line_.cell_holdup_mass * vh[i] +
              vapor_line_.wall_heat_capacity_per_m * lc_v * vw[i]);
    }
    return e;
}

Trajectory simulate(const cfg::ScenarioConfig& config) {
    Flowsheet fs(config);
    const cfg::ControlSettings& ctl_cfg = config.control;
    const double dtc = ctl_cfg.sample_interval;
    const int n = fs.state_size();

    auto make_pid = [](const cfg::LoopSettings& loop) {
        ctl::PlantModel plant;
        if (loop.plant_tau > 0.0) {
            plant = {std::fabs(loop.plant_gain), loop.plant_tau, loop.plant_theta};
        } else {
            // Integrating response: represent as a very slow lag whose
            // static gain reproduces the identified rate gain.
            plant = {std::fabs(loop.plant_gain) * 1e6, 1e6, loop.plant_theta};
        }
        ctl::PidParams params = ctl::simc_tune(plant, loop.closed_loop_tc);
        params.output_low = 0.0;
        params.output_high = 1.0;
        params.direction = loop.plant_gain < 0.0 ? ctl::PidDirection::kDirect
                                                 : ctl::PidDirection::kReverse;
        params.setpoint_weight = loop.setpoint_weight;
        return params;
    };
    const ctl::PidParams fc_params = make_pid(ctl_cfg.flow_loop);
    const ctl::PidParams pc1_params = make_pid(ctl_cfg.onshore_pressure_loop);
    const ctl::PidParams pc2_params = make_pid(ctl_cfg.seaborne_pressure_loop);

    ctl::SplitRangeConfig split{ctl_cfg.split_point, config.pump.min_speed,
                                config.pump.max_speed};
    if (ctl_cfg.mode == "fixed-speed") {
        split.min_speed = config.pump.max_speed;
        split.max_speed = config.pump.max_speed;
    }

    std::vector<double> x = fs.initial_state();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), xs(n), x3(n);

    // Per-state absolute tolerance floors; relative tolerance from config.
    std::vector<double> atol(n, 1e-3);
    atol[0] = atol[2] = 1.0;
    atol[1] = atol[3] = 1e5;
    for (int i = fs.liquid_h_offset(); i < fs.liquid_h_offset() + fs.liquid_line().n_cells; ++i)
        atol[i] = 1e-2;
    for (int i = fs.liquid_wall_offset(); i < fs.liquid_wall_offset() + fs.liquid_line().n_cells; ++i)
        atol[i] = 1e-5;
    for (int i = fs.vapor_h_offset(); i < fs.vapor_h_offset() + fs.vapor_line().n_cells; ++i)
        atol[i] = 1e-2;
    for (int i = fs.vapor_wall_offset(); i < fs.vapor_wall_offset() + fs.vapor_line().n_cells; ++i)
        atol[i] = 1e-5;
    for (int i = fs.quadrature_offset(); i < n; ++i) atol[i] = 1e2;
    atol[fs.quadrature_offset()] = 1e-3;
    const double rtol = config.run.rel_tol;

    Actuators act;
    act.pump_speed = split.min_speed;

    double t = 0.0;
    auto eval = [&](const double* state, double* dx) -> Flowsheet::Instant {
        try {
            return fs.derivatives(state, act, dx);
        } catch (const SimulationError&) {
            throw;
        } catch (const std::exception& e) {
            throw SimulationError(e.what(), t,
                                  std::vector<double>(state, state + n));
        }
    };

    Flowsheet::Instant ins = eval(x.data(), k1.data());

    ctl::PidState fc_state, pc1_state, pc2_state;
    ctl::pid_initialize(fc_state, fc_params, ctl_cfg.flow_set_point,
                        ins.network.volume_flow, 0.0);
    ctl::pid_initialize(pc1_state, pc1_params, config.onshore.pressure_set_point,
                        ins.onshore.pressure, 0.0);
    ctl::pid_initialize(pc2_state, pc2_params, config.seaborne.pressure_set_point,
                        ins.seaborne.pressure, 0.0);

    Trajectory traj;
    traj.steps.reserve(
        static_cast<size_t>(config.run.time_limit / dtc) + 2);
    traj.initial_mass = fs.stored_mass(x.data());
    traj.initial_energy = fs.stored_energy(x.data());

    const double stop_volume = config.seaborne.stop_fill * config.seaborne.volume;

    auto record = [&](const Flowsheet::Instant& snap) {
        TrajectoryStep row;
        row.time = t;
        row.onshore_pressure = snap.onshore.pressure;
        row.seaborne_pressure = snap.seaborne.pressure;
        row.onshore_liquid_volume = snap.onshore.liquid_volume;
        row.seaborne_liquid_volume = snap.seaborne.liquid_volume;
        row.volume_flow = snap.network.volume_flow;
        row.mass_flow = snap.network.mass_flow;
        row.bog_flow = snap.bog_flow;
        row.return_flow = snap.return_flow;
        row.pump_speed = act.pump_speed;
        row.throttle_opening = act.throttle_opening;
        row.return_opening = act.return_opening;
        row.liquefier_opening = act.liquefier_opening;
        row.shaft_power = snap.shaft_power;
        row.point1 = snap.point1;
        row.point2 = snap.point2;
        row.point3 = snap.point3;
        row.point4 = snap.point4;
        row.sigma_pump = snap.sigma_pump;
        row.sigma_pipe = snap.sigma_pipe;
        row.sigma_valve = snap.sigma_valve;
        row.starved = snap.network.starved;
        row.efficiency_floored = snap.efficiency_floored;
        traj.steps.push_back(row);
    };

    double h_carry = std::min(dtc, config.run.max_step);
    for (;;) {
        // Controller moves from the measurement at time t, then a window of
        // plant evolution under the new actuator values.
        const double u = ctl::pid_step(fc_state, fc_params, ctl_cfg.flow_set_point,
                                       ins.network.volume_flow, dtc);
        const ctl::SplitRangeOutput sro = ctl::split_range_map(u, split);
        act.throttle_opening = sro.valve_opening;
        act.pump_speed = sro.pump_speed;
        act.liquefier_opening =
            ctl::pid_step(pc1_state, pc1_params, config.onshore.pressure_set_point,
                          ins.onshore.pressure, dtc);
        act.return_opening =
            ctl::pid_step(pc2_state, pc2_params, config.seaborne.pressure_set_point,
                          ins.seaborne.pressure, dtc);

        ins = eval(x.data(), k1.data());
        record(ins);

        double t_loc = 0.0;
        double h = std::min(h_carry, dtc);
        while (t_loc < dtc - 1e-12) {
            h = std::min(h, dtc - t_loc);
            // Bogacki-Shampine 3(2) with the last stage reused when accepted.
            for (int i = 0; i < n; ++i) xs[i] = x[i] + 0.5 * h * k1[i];
            eval(xs.data(), k2.data());
            for (int i = 0; i < n; ++i) xs[i] = x[i] + 0.75 * h * k2[i];
            eval(xs.data(), k3.data());
            for (int i = 0; i < n; ++i) {
                x3[i] = x[i] + h * (2.0 / 9.0 * k1[i] + 1.0 / 3.0 * k2[i] +
                                    4.0 / 9.0 * k3[i]);
            }
            const Flowsheet::Instant tail = eval(x3.data(), k4.data());
            double err_sq = 0.0;
            for (int i = 0; i < n; ++i) {
                const double err =
                    h * (-5.0 / 72.0 * k1[i] + 1.0 / 12.0 * k2[i] +
                         1.0 / 9.0 * k3[i] - 1.0 / 8.0 * k4[i]);
                const double scale =
                    atol[i] + rtol * std::max(std::fabs(x[i]), std::fabs(x3[i]));
                err_sq += (err / scale) * (err / scale);
            }
            const double norm = std::sqrt(err_sq / n);
            if (norm <= 1.0) {
                x.swap(x3);
                k1.swap(k4);
                ins = tail;
                t_loc += h;
                const double grow =
                    norm > 0.0 ? 0.9 * std::pow(norm, -1.0 / 3.0) : 5.0;
                h = std::min({h * std::clamp(grow, 1.0, 5.0),
                              config.run.max_step, dtc});
            } else {
                h *= std::max(0.2, 0.9 * std::pow(norm, -1.0 / 3.0));
                if (h < 1e-6) {
                    throw SimulationError("integration step collapsed",
                                          t + t_loc, x);
                }
            }
        }
        h_carry = h;
        t += dtc;

        if (ins.seaborne.liquid_volume >= stop_volume) {
            traj.stop_reason = StopReason::kTargetFill;
            break;
        }
        if (t >= config.run.time_limit - 1e-9) {
            traj.stop_reason = StopReason::kTimeLimit;
            break;
        }
    }
    record(ins);

    traj.elapsed = t;
    const int q0 = fs.quadrature_offset();
    traj.bog_mass = x[q0];
    traj.shaft_energy = x[q0 + 1];
    traj.heat_in = x[q0 + 2];
    traj.bog_enthalpy_out = x[q0 + 3];
    traj.final_mass = fs.stored_mass(x.data());
    traj.final_energy = fs.stored_energy(x.data());
    return traj;
}

KpiRecord compute_kpis(const Trajectory& traj, const cfg::ScenarioConfig& config) {
    KpiRecord kpi;
    if (traj.steps.size() < 2) {
        kpi.completed = false;
        return kpi;
    }
    const double bog_kg = trapezoid(traj, &TrajectoryStep::bog_flow);
    const double shaft_j = trapezoid(traj, &TrajectoryStep::shaft_power);
    kpi.relative_bog = 100.0 * bog_kg / config.run.fill_reference_mass;
    kpi.relative_power = shaft_j / 1000.0 / config.run.fill_reference_volume;
    kpi.mean_bog_flow = bog_kg / traj.elapsed;
    double peak = 0.0;
    for (const TrajectoryStep& s : traj.steps) peak = std::max(peak, s.bog_flow);
    kpi.max_bog_flow = peak;
    kpi.filling_time = traj.elapsed / 3600.0;
    kpi.total_bog = bog_kg / 1000.0;
    kpi.total_shaft_energy = shaft_j / 3.6e9;
    kpi.completed = traj.stop_reason == StopReason::kTargetFill;
    return kpi;
}

EntropyReport entropy_report(const Trajectory& traj,
                             const cfg::ScenarioConfig& config) {
    EntropyReport rep;
    if (traj.steps.empty()) return rep;
    const TrajectoryStep& last = traj.steps.back();
    rep.pump_rate = last.sigma_pump;
    rep.pipe_rate = last.sigma_pipe;
    rep.valve_rate = last.sigma_valve;
    rep.total_rate = rep.pump_rate + rep.pipe_rate + rep.valve_rate;
    rep.pump_integrated = trapezoid(traj, &TrajectoryStep::sigma_pump);
    rep.pipe_integrated = trapezoid(traj, &TrajectoryStep::sigma_pipe);
    rep.valve_integrated = trapezoid(traj, &TrajectoryStep::sigma_valve);
    rep.total_integrated =
        rep.pump_integrated + rep.pipe_integrated + rep.valve_integrated;
    const double t0 = config.dead_state_temperature;
    rep.pump_exergy_rate = t0 * rep.pump_rate;
    rep.pipe_exergy_rate = t0 * rep.pipe_rate;
    rep.valve_exergy_rate = t0 * rep.valve_rate;
    rep.total_exergy_rate = t0 * rep.total_rate;
    rep.pump_exergy = t0 * rep.pump_integrated;
    rep.pipe_exergy = t0 * rep.pipe_integrated;
    rep.valve_exergy = t0 * rep.valve_integrated;
    rep.total_exergy = t0 * rep.total_integrated;
    rep.steady = trajectory_steady(traj);
    return rep;
}

TsDiagram ts_diagram(const Trajectory& traj) {
    TsDiagram d;
    if (traj.steps.empty()) return d;
    const TrajectoryStep& last = traj.steps.back();
    d.point1 = last.point1;
    d.point2 = last.point2;
    d.point3 = last.point3;
    d.point4 = last.point4;
    d.steady = trajectory_steady(traj);
    return d;
}

std::vector<SweepRow> sweep(const cfg::ScenarioConfig& base,
                            const std::string& parameter,
                            const std::vector<double>& values) {
    std::vector<SweepRow> rows;
    auto run_one = [&rows](const cfg::ScenarioConfig& c, double value) {
        SweepRow row;
        row.value = value;
        row.mode = c.control.mode;
        try {
            const Trajectory traj = simulate(c);
            row.kpi = compute_kpis(traj, c);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(row);
    };

    if (parameter == "seaborne-pressure") {
        for (double v : values) {
            cfg::ScenarioConfig c = base;
            c.seaborne.max_working_pressure = v;
            c.seaborne.initial_pressure = v;
            c.seaborne.pressure_set_point = v;
            run_one(c, v);
        }
    } else if (parameter == "flow-set-point") {
        for (double v : values) {
            cfg::ScenarioConfig c = base;
            c.control.flow_set_point = v;
            run_one(c, v);
        }
    } else if (parameter == "mode") {
        cfg::ScenarioConfig c = base;
        c.control.mode = "split-range";
        run_one(c, 0.0);
        c.control.mode = "fixed-speed";
        run_one(c, 1.0);
    } else {
        throw std::invalid_argument(
            "sweep parameter must be seaborne-pressure, flow-set-point or mode");
    }
    return rows;
}

}  // namespace lh2::sim
