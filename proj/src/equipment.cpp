#include "lh2/equipment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "lh2/numerics.hpp"

namespace lh2::eq {
namespace {

constexpr double kPi = std::numbers::pi;

struct MixProps {
    double quality;
    double mix_u;  // J/kg at the volume-constrained quality
};

// Quality pinned by the specific volume, mixture energy at that quality.
MixProps mix_at(const props::SaturationPoint& sp, double nu) {
    const double nu_l = 1.0 / sp.liquid.density;
    const double nu_v = 1.0 / sp.vapor.density;
    const double x = (nu - nu_l) / (nu_v - nu_l);
    const double u_l = sp.liquid.enthalpy - sp.pressure * nu_l;
    const double u_v = sp.vapor.enthalpy - sp.pressure * nu_v;
    return {x, u_l + x * (u_v - u_l)};
}

TankIntensive intensive_from(const props::SaturationPoint& sp, double quality,
                             double mass, double tank_volume) {
    TankIntensive ti;
    ti.pressure = sp.pressure;
    ti.temperature = sp.temperature;
    ti.quality = quality;
    ti.liquid_volume = mass * (1.0 - quality) / sp.liquid.density;
    ti.liquid_level_fraction = ti.liquid_volume / tank_volume;
    return ti;
}

[[noreturn]] void flash_fail(const char* why, double r_cold, double r_hot) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "tank_flash: %s (energy residual %.6g J cold end, %.6g J "
                  "hot end)",
                  why, r_cold, r_hot);
    throw FlashError(buf, r_cold, r_hot);
}

TankIntensive flash_compressed_liquid(double nu, double u, double p_lo,
                                      double tank_volume, double r_cold,
                                      double r_hot) {
    const double rho_target = 1.0 / nu;
    auto g = [&](double p) {
        return props::liquid_state(p, u + p * nu).density - rho_target;
    };
    const double p_hi = props::max_pressure() * 0.999;
    if (g(p_lo) * g(p_hi) > 0.0)
        flash_fail("no compressed-liquid state matches the tank density",
                   r_cold, r_hot);
    const double p = num::brent(g, p_lo, p_hi, 1.0);
    const props::FluidState f = props::liquid_state(p, u + p * nu);
    TankIntensive ti;
    ti.pressure = p;
    ti.temperature = f.temperature;
    ti.quality = 0.0;
    ti.liquid_volume = tank_volume;
    ti.liquid_level_fraction = 1.0;
    return ti;
}

TankIntensive flash_superheated_vapor(double nu, double u,
                                      double tank_volume, double r_cold,
                                      double r_hot) {
    const double rho_target = 1.0 / nu;
    auto g = [&](double p) {
        return props::vapor_state_by_enthalpy(p, u + p * nu).density -
               rho_target;
    };
    const double p_lo = props::min_pressure() * 1.001;
    double p_hi = props::max_pressure();
    // vapor surface tops out below the saturation table; probe downward
    while (p_hi > p_lo) {
        try {
            g(p_hi);
            break;
        } catch (const std::invalid_argument&) {
            p_hi *= 0.93;
        }
    }
    if (p_hi <= p_lo || g(p_lo) * g(p_hi) > 0.0)
        flash_fail("no superheated-vapor state matches the tank density",
                   r_cold, r_hot);
    const double p = num::brent(g, p_lo, p_hi, 1.0);
    const props::FluidState f = props::vapor_state_by_enthalpy(p, u + p * nu);
    TankIntensive ti;
    ti.pressure = p;
    ti.temperature = f.temperature;
    ti.quality = 1.0;
    ti.liquid_volume = 0.0;
    ti.liquid_level_fraction = 0.0;
    return ti;
}

}  // namespace

TankGeometry TankGeometry::sphere(double volume, double overall_u,
                                  double ambient_t,
                                  double max_working_pressure) {
    if (volume <= 0.0)
        throw std::invalid_argument("TankGeometry: volume must be positive");
    TankGeometry g;
    g.volume = volume;
    g.surface_area = std::cbrt(36.0 * kPi) * std::pow(volume, 2.0 / 3.0);
    g.overall_u = overall_u;
    g.ambient_t = ambient_t;
    g.max_working_pressure = max_working_pressure;
    return g;
}

TankIntensive tank_flash(const TankState& state, const TankGeometry& geometry,
                         double temperature_hint) {
    if (!(state.total_mass > 0.0))
        throw std::invalid_argument("tank_flash: total mass must be positive");
    const double mass = state.total_mass;
    const double nu = geometry.volume / mass;
    const double u = state.total_internal_energy / mass;

    const double t_min = props::min_temperature() + 1e-6;
    const double t_max = props::max_temperature() - 1e-6;

    double quality_at_root = 0.0;
    auto residual = [&](double t) {
        const MixProps m = mix_at(props::sat_point_t(t), nu);
        quality_at_root = m.quality;
        return mass * m.mix_u - state.total_internal_energy;
    };

    // Temperature window where the volume-constrained quality stays in [0,1]:
    // above t_x0 the contents are denser than saturated liquid, above t_x1
    // lighter than saturated vapor.  Both bounds shrink the hot end.
    auto nu_liq = [&](double t) {
        return 1.0 / props::sat_point_t(t).liquid.density - nu;
    };
    auto nu_vap = [&](double t) {
        return 1.0 / props::sat_point_t(t).vapor.density - nu;
    };
    if (nu_liq(t_min) > 0.0)
        flash_fail("contents denser than the coldest saturated liquid",
                   mass * mix_at(props::sat_point_t(t_min), nu).mix_u -
                       state.total_internal_energy,
                   0.0);
    double t_x0 = t_max, t_x1 = t_max;
    if (nu_liq(t_max) > 0.0) t_x0 = num::brent(nu_liq, t_min, t_max, 1e-9);
    if (nu_vap(t_max) < 0.0) t_x1 = num::brent(nu_vap, t_min, t_max, 1e-9);
    const bool liquid_bound = t_x0 <= t_x1;
    const double t_hi = std::min(t_x0, t_x1);

    const double r_hot = residual(t_hi);
    if (r_hot < 0.0) {
        // hotter than any two-phase state at this density
        if (liquid_bound)
            return flash_compressed_liquid(nu, u, props::sat_pressure(t_hi),
                                           geometry.volume, 0.0, r_hot);
        return flash_superheated_vapor(nu, u, geometry.volume, 0.0, r_hot);
    }

    double t_lo = t_min;
    double r_cold;
    if (temperature_hint > t_min && temperature_hint < t_hi) {
        // warm start: walk a small bracket outward from the hint
        double half = 0.08;
        for (int k = 0; k < 3; ++k) {
            const double a = std::max(t_min, temperature_hint - half);
            const double b = std::min(t_hi, temperature_hint + half);
            const double ra = residual(a), rb = residual(b);
            if (ra <= 0.0 && rb >= 0.0) {
                const double t = num::brent(residual, a, b, 1e-10);
                residual(t);
                return intensive_from(props::sat_point_t(t),
                                      std::clamp(quality_at_root, 0.0, 1.0),
                                      mass, geometry.volume);
            }
            half *= 6.0;
        }
    }
    r_cold = residual(t_lo);
    if (r_cold > 0.0)
        flash_fail("colder than the property-table floor", r_cold, r_hot);
    const double t = num::brent(residual, t_lo, t_hi, 1e-10);
    residual(t);
    return intensive_from(props::sat_point_t(t),
                          std::clamp(quality_at_root, 0.0, 1.0), mass,
                          geometry.volume);
}

TankState tank_reconstruct(const TankIntensive& intensive,
                           const TankGeometry& geometry) {
    if (intensive.quality <= 0.0 || intensive.quality >= 1.0)
        throw std::invalid_argument(
            "tank_reconstruct: needs a two-phase state");
    const props::SaturationPoint sp = props::sat_point(intensive.pressure);
    const double m_l = intensive.liquid_volume * sp.liquid.density;
    const double v_vap = geometry.volume - intensive.liquid_volume;
    const double m_v = v_vap * sp.vapor.density;
    const double u_l =
        sp.liquid.enthalpy - sp.pressure / sp.liquid.density;
    const double u_v = sp.vapor.enthalpy - sp.pressure / sp.vapor.density;
    return {m_l + m_v, m_l * u_l + m_v * u_v};
}

TankDerivatives tank_derivatives(const TankIntensive& intensive,
                                 const TankStreams& s) {
    const props::SaturationPoint sp = props::sat_point(intensive.pressure);
    TankDerivatives d;
    d.mass_rate = s.liquid_in + s.vapor_in - s.liquid_out - s.vapor_out;
    d.energy_rate = s.liquid_in * s.liquid_in_h + s.vapor_in * s.vapor_in_h -
                    s.liquid_out * sp.liquid.enthalpy -
                    s.vapor_out * sp.vapor.enthalpy + s.heat_ingress;
    return d;
}

double tank_heat_ingress(const TankGeometry& geometry, double fluid_t) {
    return (geometry.ambient_t - fluid_t) * geometry.surface_area *
           geometry.overall_u;
}

double boil_off_rate(const TankGeometry& geometry, double heat_w,
                     const props::SaturationPoint& sat, double ullage) {
    if (ullage < 0.0 || ullage >= 1.0)
        throw std::invalid_argument("boil_off_rate: ullage outside [0,1)");
    const double h_vap = sat.vapor.enthalpy - sat.liquid.enthalpy;
    const double m_liq =
        sat.liquid.density * geometry.volume * (1.0 - ullage);
    return heat_w / (m_liq * h_vap) * 86400.0 * 100.0;
}

namespace {

void check_pump_inputs(double flow_m3h, double speed_hz,
                       const PumpModel& model) {
    if (speed_hz < model.min_speed - 1e-9 || speed_hz > model.max_speed + 1e-9) {
        char buf[120];
        std::snprintf(buf, sizeof buf,
                      "pump speed %.4g Hz outside actuator range [%g, %g] Hz",
                      speed_hz, model.min_speed, model.max_speed);
        throw std::invalid_argument(buf);
    }
    if (flow_m3h < 0.0)
        throw std::invalid_argument("pump flow must be nonnegative");
}

}  // namespace

double pump_dp(double flow_m3h, double speed_hz, const PumpModel& model) {
    check_pump_inputs(flow_m3h, speed_hz, model);
    const double n = speed_hz / model.ref_speed;
    const double r = model.shutoff_head_ratio;
    const double q = flow_m3h / model.best_point_flow;
    const double dp = model.best_point_dp * (r * n * n - (r - 1.0) * q * q);
    return std::max(dp, 0.0);
}

double pump_efficiency(double flow_m3h, double speed_hz,
                       const PumpModel& model) {
    check_pump_inputs(flow_m3h, speed_hz, model);
    const double n = speed_hz / model.ref_speed;
    const double q = flow_m3h / (model.best_point_flow * n);
    const double eta =
        model.peak_efficiency - model.efficiency_droop * (q - 1.0) * (q - 1.0);
    return std::max(eta, model.efficiency_floor);
}

PumpOutlet pump_outlet(const props::FluidState& inlet, double flow_m3h,
                       double speed_hz, const PumpModel& model) {
    const double dp = pump_dp(flow_m3h, speed_hz, model);
    const double eta = pump_efficiency(flow_m3h, speed_hz, model);
    const double rho = inlet.density;
    const double w = dp / (rho * eta);
    const double mdot = flow_m3h * rho / 3600.0;
    PumpOutlet out;
    out.outlet = props::liquid_state(inlet.pressure + dp, inlet.enthalpy + w);
    out.shaft_power = mdot * w;
    out.efficiency_floored = eta <= model.efficiency_floor + 1e-12;
    return out;
}

double PipeLine::flow_area() const {
    return 0.25 * kPi * internal_diameter * internal_diameter;
}

PipeLine make_pipeline(double length, double diameter, double roughness,
                       double heat_ingress_per_m, int n_cells,
                       int parallel_count, double wall_heat_capacity_per_m,
                       double wall_fluid_conductance_per_m, bool vapor_service,
                       double reference_density) {
    if (length <= 0.0 || diameter <= 0.0)
        throw std::invalid_argument("make_pipeline: length and diameter must be positive");
    if (n_cells < 1)
        throw std::invalid_argument("make_pipeline: n_cells must be at least 1");
    if (parallel_count < 1)
        throw std::invalid_argument("make_pipeline: parallel_count must be at least 1");
    if (reference_density <= 0.0)
        throw std::invalid_argument("make_pipeline: reference density must be positive");
    PipeLine p;
    p.length = length;
    p.internal_diameter = diameter;
    p.roughness = roughness;
    p.heat_ingress_per_m = heat_ingress_per_m;
    p.n_cells = n_cells;
    p.parallel_count = parallel_count;
    p.wall_heat_capacity_per_m = wall_heat_capacity_per_m;
    p.wall_fluid_conductance_per_m = wall_fluid_conductance_per_m;
    p.vapor_service = vapor_service;
    p.cell_holdup_mass = reference_density * p.flow_area() * p.cell_length();
    return p;
}

double friction_factor(double reynolds, double relative_roughness) {
    if (!(reynolds > 0.0))
        throw std::invalid_argument("friction_factor: Reynolds must be positive");
    auto swamee_jain = [&](double re) {
        const double arg =
            relative_roughness / 3.7 + 5.74 / std::pow(re, 0.9);
        const double lg = std::log10(arg);
        return 0.25 / (lg * lg);
    };
    if (reynolds < 2300.0) return 64.0 / reynolds;
    if (reynolds >= 4000.0) return swamee_jain(reynolds);
    const double w = (reynolds - 2300.0) / 1700.0;
    return (1.0 - w) * (64.0 / 2300.0) + w * swamee_jain(4000.0);
}

double pipe_pressure_drop(const PipeLine& pipe, double mdot_per_pipe,
                          const props::FluidState& state) {
    if (mdot_per_pipe <= 0.0) return 0.0;
    const double area = pipe.flow_area();
    const double rho = state.density;
    const double v = mdot_per_pipe / (rho * area);
    const double mu = state.quality >= 1.0
                          ? props::vapor_viscosity(state.temperature)
                          : props::liquid_viscosity(state.temperature);
    const double re = rho * v * pipe.internal_diameter / mu;
    const double f =
        friction_factor(re, pipe.roughness / pipe.internal_diameter);
    return f * (pipe.length / pipe.internal_diameter) * 0.5 * rho * v * v;
}

void pipe_cell_temperatures(const PipeLine& pipe, const double* cell_h,
                            double pressure, double* cell_t) {
    for (int i = 0; i < pipe.n_cells; ++i) {
        cell_t[i] = pipe.vapor_service
                        ? props::vapor_temperature_by_enthalpy(pressure,
                                                               cell_h[i])
                        : props::liquid_temperature(pressure, cell_h[i]);
    }
}

void pipe_cell_derivatives(const PipeLine& pipe, const double* cell_h,
                           const double* wall_t, double mdot_per_pipe,
                           double inlet_h, double pressure, double* dh_dt,
                           double* dwall_t_dt, double* cell_t_out,
                           double* external_heat_w) {
    const double lc = pipe.cell_length();
    const double k = pipe.wall_fluid_conductance_per_m;
    const double q = pipe.heat_ingress_per_m;
    double absorbed = 0.0;
    for (int i = 0; i < pipe.n_cells; ++i) {
        const double t_i =
            pipe.vapor_service
                ? props::vapor_temperature_by_enthalpy(pressure, cell_h[i])
                : props::liquid_temperature(pressure, cell_h[i]);
        const double h_up = i == 0 ? inlet_h : cell_h[i - 1];
        const double wall_to_fluid = k * lc * (wall_t[i] - t_i);
        dh_dt[i] = (mdot_per_pipe * (h_up - cell_h[i]) + wall_to_fluid) /
                   pipe.cell_holdup_mass;
        double dwall = (q - k * (wall_t[i] - t_i)) / pipe.wall_heat_capacity_per_m;
        // Stagnant lines warm without bound in this model; hold the wall at
        // its cap so enthalpies stay inside the property surfaces.
        if (wall_t[i] >= pipe.wall_t_cap && dwall > 0.0) dwall = 0.0;
        dwall_t_dt[i] = dwall;
        if (cell_t_out) cell_t_out[i] = t_i;
        absorbed += wall_to_fluid + dwall * pipe.wall_heat_capacity_per_m * lc;
    }
    if (external_heat_w) *external_heat_w = absorbed;
}

double valve_flow_fraction(const ValveModel& model, double opening) {
    if (opening < -1e-12 || opening > 1.0 + 1e-12)
        throw std::invalid_argument("valve_flow: opening outside [0,1]");
    const double u = std::clamp(opening, 0.0, 1.0);
    if (model.characteristic == ValveCharacteristic::kEqualPercentage) {
        const double r = model.rangeability;
        return (std::pow(r, u) - 1.0) / (r - 1.0);
    }
    return u;
}

double valve_flow(const ValveModel& model, double opening,
                  const props::FluidState& upstream, double p_down) {
    const double phi = valve_flow_fraction(model, opening);
    const double dp = upstream.pressure - p_down;
    if (dp <= 0.0 || phi <= 0.0) return 0.0;
    return model.flow_coefficient * phi * std::sqrt(dp * upstream.density);
}

}  // namespace lh2::eq
