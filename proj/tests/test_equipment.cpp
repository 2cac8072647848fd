#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lh2/equipment.hpp"
#include "lh2/props.hpp"

using namespace lh2;
using namespace lh2::eq;

namespace {

// mass/energy totals for a tank holding the given liquid level at saturation
TankState tank_from_level(double pressure, double level, double volume) {
    const props::SaturationPoint sp = props::sat_point(pressure);
    const double m_l = level * volume * sp.liquid.density;
    const double m_v = (1.0 - level) * volume * sp.vapor.density;
    const double u_l = sp.liquid.enthalpy - pressure / sp.liquid.density;
    const double u_v = sp.vapor.enthalpy - pressure / sp.vapor.density;
    return {m_l + m_v, m_l * u_l + m_v * u_v};
}

double colebrook(double re, double rr) {
    double inv_sqrt_f = 7.0;
    for (int i = 0; i < 60; ++i)
        inv_sqrt_f = -2.0 * std::log10(rr / 3.7 + 2.51 * inv_sqrt_f / re);
    return 1.0 / (inv_sqrt_f * inv_sqrt_f);
}

PipeLine nominal_pipe(double q_per_m = 8.5) {
    return make_pipeline(1100.0, 0.406, 0.07e-3, q_per_m, 20, 2, 717.0, 100.0,
                         false, 70.505);
}

}  // namespace

TEST_CASE("spherical tank geometry") {
    const TankGeometry g = TankGeometry::sphere(50000.0, 0.0044, 298.15, 1.10e5);
    CHECK(g.surface_area == doctest::Approx(6561.0).epsilon(0.002));
    const double r = std::cbrt(3.0 * g.volume / (4.0 * M_PI));
    CHECK(g.surface_area == doctest::Approx(4.0 * M_PI * r * r).epsilon(1e-9));
    CHECK_THROWS_AS(TankGeometry::sphere(-1.0, 0.0044, 298.15, 1e5),
                    std::invalid_argument);
}

TEST_CASE("tank heat ingress") {
    const TankGeometry g = TankGeometry::sphere(50000.0, 0.0044, 298.15, 1.10e5);
    const double q = tank_heat_ingress(g, 20.55);
    CHECK(q == doctest::Approx(8000.0).epsilon(0.005));

    TankGeometry zero = g;
    zero.overall_u = 0.0;
    CHECK(tank_heat_ingress(zero, 20.55) == 0.0);

    TankGeometry hot = g;
    hot.ambient_t = 20.55 + 2.0 * (298.15 - 20.55);
    CHECK(tank_heat_ingress(hot, 20.55) == doctest::Approx(2.0 * q));
}

TEST_CASE("boil-off rates match the storage-tank design points") {
    const TankGeometry ot = TankGeometry::sphere(50000.0, 0.0044, 298.15, 1.10e5);
    const double bor_ot =
        boil_off_rate(ot, 8000.0, props::sat_point(1.10e5), 0.10);
    CHECK(bor_ot == doctest::Approx(0.04899).epsilon(0.002));
    CHECK(bor_ot > 0.045);
    CHECK(bor_ot < 0.055);

    const TankGeometry st = TankGeometry::sphere(45000.0, 0.0044, 298.15, 1.15e5);
    const double bor_st =
        boil_off_rate(st, 7500.0, props::sat_point(1.15e5), 0.10);
    CHECK(bor_st == doctest::Approx(0.0512).epsilon(0.005));
    CHECK(bor_st > 0.045);
    CHECK(bor_st < 0.055);

    CHECK(boil_off_rate(st, 0.0, props::sat_point(1.15e5), 0.10) == 0.0);
}

TEST_CASE("tank flash recovers constructed states") {
    const TankGeometry g = TankGeometry::sphere(45000.0, 0.0044, 298.15, 1.15e5);
    const TankState s = tank_from_level(1.15e5, 0.011, g.volume);
    const TankIntensive ti = tank_flash(s, g);
    CHECK(ti.pressure == doctest::Approx(1.15e5).epsilon(1e-7));
    CHECK(ti.liquid_level_fraction == doctest::Approx(0.011).epsilon(1e-6));

    // all liquid at saturated-liquid density
    const props::SaturationPoint sp = props::sat_point(1.10e5);
    const double m = g.volume * sp.liquid.density;
    const double u_l = sp.liquid.enthalpy - 1.10e5 / sp.liquid.density;
    const TankIntensive full = tank_flash({m, m * u_l}, g);
    CHECK(full.quality == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(full.pressure == doctest::Approx(1.10e5).epsilon(1e-5));
}

TEST_CASE("tank flash agrees with a brute-force temperature scan") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> up(0.5e5, 4.0e5);
    std::uniform_real_distribution<double> ul(0.02, 0.95);
    std::uniform_real_distribution<double> uv(1000.0, 60000.0);
    for (int k = 0; k < 25; ++k) {
        const double p_true = up(rng), level = ul(rng), vol = uv(rng);
        const TankGeometry g = TankGeometry::sphere(vol, 0.0044, 298.15, 4e5);
        const TankState s = tank_from_level(p_true, level, vol);
        const TankIntensive ti = tank_flash(s, g);

        // 1 mK scan around the true saturation temperature
        const double t0 = props::sat_temperature(p_true);
        double best_t = 0.0, best_res = 1e300;
        for (double t = t0 - 0.25; t <= t0 + 0.25; t += 1e-3) {
            const props::SaturationPoint sp = props::sat_point_t(t);
            const double nu_l = 1.0 / sp.liquid.density;
            const double nu_v = 1.0 / sp.vapor.density;
            const double x = (vol / s.total_mass - nu_l) / (nu_v - nu_l);
            const double u_mix =
                (sp.liquid.enthalpy - sp.pressure * nu_l) * (1.0 - x) +
                (sp.vapor.enthalpy - sp.pressure * nu_v) * x;
            const double res =
                std::fabs(s.total_mass * u_mix - s.total_internal_energy);
            if (res < best_res) {
                best_res = res;
                best_t = t;
            }
        }
        CHECK(std::fabs(ti.temperature - best_t) <= 2e-3);

        // intensive state reconstructs the inputs
        const TankState back = tank_reconstruct(ti, g);
        CHECK(back.total_mass ==
              doctest::Approx(s.total_mass).epsilon(1e-8));
        CHECK(back.total_internal_energy ==
              doctest::Approx(s.total_internal_energy).epsilon(1e-8));
    }
}

TEST_CASE("tank flash warm start changes nothing") {
    const TankGeometry g = TankGeometry::sphere(50000.0, 0.0044, 298.15, 1.10e5);
    const TankState s = tank_from_level(1.10e5, 0.9, g.volume);
    const TankIntensive cold = tank_flash(s, g);
    const TankIntensive warm = tank_flash(s, g, cold.temperature + 0.03);
    CHECK(warm.temperature == doctest::Approx(cold.temperature).epsilon(1e-9));
    CHECK(warm.pressure == doctest::Approx(cold.pressure).epsilon(1e-9));
}

TEST_CASE("tank flash single-phase fallbacks") {
    const double vol = 1000.0;
    const TankGeometry g = TankGeometry::sphere(vol, 0.0044, 298.15, 5e5);

    // denser and colder than any saturated liquid of matching density
    const props::SaturationPoint sp = props::sat_point(1.5e5);
    const double m_liq = vol * sp.liquid.density * 1.008;
    const double u_liq =
        sp.liquid.enthalpy - 1.5e5 / sp.liquid.density - 2500.0;
    const TankIntensive liq = tank_flash({m_liq, m_liq * u_liq}, g);
    CHECK(liq.quality == 0.0);
    CHECK(liq.liquid_level_fraction == doctest::Approx(1.0));
    CHECK(liq.temperature < props::sat_temperature(liq.pressure));

    // lighter and hotter than saturated vapor
    const double m_vap = vol * props::sat_point(1.2e5).vapor.density * 0.5;
    const double u_vap =
        props::sat_point(1.2e5).vapor.enthalpy + 3.0e4;
    const TankIntensive vap = tank_flash({m_vap, m_vap * u_vap}, g);
    CHECK(vap.quality == 1.0);
    CHECK(vap.liquid_volume == 0.0);
    CHECK(vap.temperature > props::sat_temperature(vap.pressure));
}

TEST_CASE("tank flash failure carries bracketing residuals") {
    const TankGeometry g = TankGeometry::sphere(1000.0, 0.0044, 298.15, 5e5);
    const TankState s{5.0e4, -5.0e9};  // colder than the table floor
    CHECK_THROWS_AS((void)tank_flash(s, g), FlashError);
    try {
        (void)tank_flash(s, g);
    } catch (const FlashError& e) {
        CHECK(e.residual_cold > 0.0);
        CHECK(std::string(e.what()).find("tank_flash") != std::string::npos);
    }
    CHECK_THROWS_AS((void)tank_flash({-1.0, 0.0}, g), std::invalid_argument);
}

TEST_CASE("rigid heated tank pressure response") {
    const TankGeometry g = TankGeometry::sphere(50000.0, 0.0044, 298.15, 1.10e5);
    const TankState s = tank_from_level(1.10e5, 0.9, g.volume);
    const double du = 8.0e4;  // 8 kW for 10 s
    const double p0 = tank_flash(s, g).pressure;
    const double p1 =
        tank_flash({s.total_mass, s.total_internal_energy + du}, g).pressure;
    CHECK((p1 - p0) / du == doctest::Approx(1.0302e-6).epsilon(0.01));
}

TEST_CASE("constant-pressure vent rate is close to Q over latent heat") {
    // venting just enough vapor to hold pressure while 8 kW leaks in
    const TankGeometry g = TankGeometry::sphere(50000.0, 0.0044, 298.15, 1.10e5);
    const TankState s0 = tank_from_level(1.10e5, 0.9, g.volume);
    const TankIntensive ti = tank_flash(s0, g);
    const props::SaturationPoint sp = props::sat_point(ti.pressure);
    const double dt = 50.0;

    auto pressure_after = [&](double vent) {
        TankStreams st;
        st.vapor_out = vent;
        st.heat_ingress = 8000.0;
        const TankDerivatives d = tank_derivatives(ti, st);
        return tank_flash({s0.total_mass + d.mass_rate * dt,
                           s0.total_internal_energy + d.energy_rate * dt},
                          g)
            .pressure;
    };
    // secant solve for the pressure-holding rate
    double a = 0.010, b = 0.030;
    double fa = pressure_after(a) - ti.pressure;
    for (int i = 0; i < 40; ++i) {
        const double fb = pressure_after(b) - ti.pressure;
        const double c = b - fb * (b - a) / (fb - fa);
        a = b;
        fa = fb;
        b = c;
        if (std::fabs(b - a) < 1e-9) break;
    }
    const double latent = sp.vapor.enthalpy - sp.liquid.enthalpy;
    CHECK(b == doctest::Approx(8000.0 / latent).epsilon(0.05));
}

TEST_CASE("tank derivative bookkeeping") {
    const TankGeometry g = TankGeometry::sphere(50000.0, 0.0044, 298.15, 1.10e5);
    const TankIntensive ti = tank_flash(tank_from_level(1.10e5, 0.9, g.volume), g);

    TankStreams quiet;
    quiet.heat_ingress = 8000.0;
    const TankDerivatives d0 = tank_derivatives(ti, quiet);
    CHECK(d0.mass_rate == 0.0);
    CHECK(d0.energy_rate == 8000.0);

    const props::SaturationPoint sp = props::sat_point(ti.pressure);
    TankStreams sym;
    sym.liquid_in = 5.0;
    sym.liquid_in_h = sp.liquid.enthalpy;
    sym.liquid_out = 5.0;
    sym.vapor_in = 2.0;
    sym.vapor_in_h = sp.vapor.enthalpy;
    sym.vapor_out = 2.0;
    const TankDerivatives d1 = tank_derivatives(ti, sym);
    CHECK(d1.mass_rate == doctest::Approx(0.0));
    CHECK(d1.energy_rate == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pump head curve") {
    const PumpModel pm;
    CHECK(pump_dp(3250.0, 60.0, pm) == doctest::Approx(2.0e5));
    CHECK(pump_dp(1625.0, 30.0, pm) == doctest::Approx(0.5e5));
    CHECK(pump_dp(0.0, 60.0, pm) == doctest::Approx(2.5e5));

    // strictly decreasing in flow at fixed speed
    double prev = pump_dp(0.0, 48.0, pm);
    for (double q = 100.0; q < 4200.0; q += 100.0) {
        const double dp = pump_dp(q, 48.0, pm);
        CHECK(dp <= prev);
        if (dp > 0.0) CHECK(dp < prev);
        prev = dp;
    }

    // affinity scaling exact by construction
    for (double n : {0.5, 0.7, 0.9}) {
        const double q = 2000.0;
        CHECK(pump_dp(q * n, 60.0 * n, pm) / pump_dp(q, 60.0, pm) ==
              doctest::Approx(n * n).epsilon(1e-12));
    }

    CHECK_THROWS_AS(pump_dp(1000.0, 20.0, pm), std::invalid_argument);
    CHECK_THROWS_AS(pump_dp(1000.0, 65.0, pm), std::invalid_argument);
    CHECK_THROWS_AS(pump_dp(-5.0, 50.0, pm), std::invalid_argument);
    try {
        pump_dp(1000.0, 20.0, pm);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("actuator range") != std::string::npos);
    }
}

TEST_CASE("pump efficiency surface") {
    const PumpModel pm;
    CHECK(pump_efficiency(3250.0, 60.0, pm) == doctest::Approx(0.60));
    CHECK(pump_efficiency(1625.0, 30.0, pm) == doctest::Approx(0.60));
    CHECK(pump_efficiency(0.5 * 3250.0, 60.0, pm) ==
          doctest::Approx(pump_efficiency(1.5 * 3250.0, 60.0, pm)));
    CHECK(pump_efficiency(7100.0, 60.0, pm) == doctest::Approx(pm.efficiency_floor));
    CHECK(pump_efficiency(50.0, 60.0, pm) > pm.efficiency_floor);
}

TEST_CASE("pump outlet stream") {
    const props::FluidState inlet = props::sat_point(1.10e5).liquid;
    const PumpModel pm;
    const PumpOutlet at_bep = pump_outlet(inlet, 3250.0, 60.0, pm);
    CHECK(at_bep.shaft_power == doctest::Approx(3250.0 * 2.0e5 / 3600.0 / 0.6)
                                    .epsilon(1e-9));
    CHECK(at_bep.outlet.pressure == doctest::Approx(1.10e5 + 2.0e5));
    CHECK(at_bep.outlet.entropy > inlet.entropy);
    CHECK_FALSE(at_bep.efficiency_floored);

    PumpModel ideal = pm;
    ideal.peak_efficiency = 1.0;
    ideal.efficiency_droop = 0.0;
    const PumpOutlet isentropic = pump_outlet(inlet, 3250.0, 60.0, ideal);
    // lossless limit: entropy rise collapses to the liquid-compressibility
    // correction of the fixed inlet-density work term
    CHECK(isentropic.outlet.entropy >= inlet.entropy);
    CHECK(isentropic.outlet.entropy ==
          doctest::Approx(inlet.entropy).epsilon(2e-3));

    const PumpOutlet floored = pump_outlet(inlet, 7100.0, 60.0, pm);
    CHECK(floored.efficiency_floored);
}

TEST_CASE("friction factor against Colebrook and Blasius") {
    CHECK(friction_factor(1e5, 0.0) ==
          doctest::Approx(0.316 * std::pow(1e5, -0.25)).epsilon(0.02));

    for (double re : {5e3, 2e4, 1e5, 1e6, 1e7, 1e8}) {
        for (double rr : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
            CHECK(friction_factor(re, rr) ==
                  doctest::Approx(colebrook(re, rr)).epsilon(0.03));
        }
    }

    // laminar branch and the transition blend
    CHECK(friction_factor(1000.0, 1e-4) == doctest::Approx(0.064));
    const double f_a = friction_factor(2299.0, 1e-4);
    const double f_b = friction_factor(2301.0, 1e-4);
    CHECK(std::fabs(f_a - f_b) < 1e-4);
    CHECK(friction_factor(3999.0, 1e-4) ==
          doctest::Approx(friction_factor(4001.0, 1e-4)).epsilon(1e-3));

    // rougher wall, more friction
    CHECK(friction_factor(1e6, 1e-3) > friction_factor(1e6, 1e-4));
    CHECK_THROWS_AS(friction_factor(0.0, 1e-4), std::invalid_argument);
}

TEST_CASE("pipe pressure drop") {
    const PipeLine pipe = nominal_pipe();
    const props::FluidState liq = props::sat_point(1.10e5).liquid;
    const double dp = pipe_pressure_drop(pipe, 31.8, liq);
    CHECK(dp == doctest::Approx(15631.0).epsilon(0.03));
    CHECK(pipe_pressure_drop(pipe, 0.0, liq) == 0.0);
    const double ratio = pipe_pressure_drop(pipe, 63.6, liq) / dp;
    CHECK(ratio > 3.7);
    CHECK(ratio < 4.2);
}

TEST_CASE("pipe cells reach the steady energy balance") {
    const PipeLine pipe = nominal_pipe();
    const double p = 2.8e5;
    const double mdot = 31.8;
    const double h_in = props::sat_point(1.10e5).liquid.enthalpy + 2800.0;
    const double t_in = props::liquid_temperature(p, h_in);

    std::vector<double> h(pipe.n_cells, h_in), tw(pipe.n_cells, t_in);
    std::vector<double> dh(pipe.n_cells), dtw(pipe.n_cells);
    const double dt = 0.5;
    for (int step = 0; step < 6000; ++step) {
        pipe_cell_derivatives(pipe, h.data(), tw.data(), mdot, h_in, p,
                              dh.data(), dtw.data());
        for (int i = 0; i < pipe.n_cells; ++i) {
            h[i] += dt * dh[i];
            tw[i] += dt * dtw[i];
        }
    }
    const double rise = h.back() - h_in;
    CHECK(rise == doctest::Approx(8.5 * 1100.0 / mdot).epsilon(0.01));
    // steady wall runs q/k above the fluid
    std::vector<double> tf(pipe.n_cells);
    pipe_cell_temperatures(pipe, h.data(), p, tf.data());
    CHECK(tw[10] - tf[10] == doctest::Approx(8.5 / 100.0).epsilon(0.02));
}

TEST_CASE("pipe cells at equilibrium stay put") {
    PipeLine pipe = make_pipeline(1100.0, 0.406, 0.07e-3, 0.0, 20, 2, 717.0,
                                  100.0, false, 70.505);
    const double p = 2.8e5;
    const double h_in = props::sat_point(1.10e5).liquid.enthalpy;
    std::vector<double> h(pipe.n_cells, h_in);
    std::vector<double> tf(pipe.n_cells);
    pipe_cell_temperatures(pipe, h.data(), p, tf.data());
    std::vector<double> dh(pipe.n_cells), dtw(pipe.n_cells);
    pipe_cell_derivatives(pipe, h.data(), tf.data(), 31.8, h_in, p, dh.data(),
                          dtw.data());
    for (int i = 0; i < pipe.n_cells; ++i) {
        CHECK(dh[i] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(dtw[i] == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("pipeline construction guards") {
    CHECK_THROWS_AS(make_pipeline(0.0, 0.4, 1e-4, 8.5, 20, 2, 717.0, 100.0,
                                  false, 70.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_pipeline(1100.0, 0.4, 1e-4, 8.5, 0, 2, 717.0, 100.0,
                                  false, 70.0),
                    std::invalid_argument);
    const PipeLine p = nominal_pipe();
    CHECK(p.cell_holdup_mass ==
          doctest::Approx(70.505 * p.flow_area() * 55.0).epsilon(1e-12));
}

TEST_CASE("valve flow characteristics") {
    const props::FluidState up = props::sat_point(1.30e5).liquid;
    ValveModel lin{1.0, ValveCharacteristic::kLinear, 50.0};
    CHECK(valve_flow(lin, 0.0, up, 1.10e5) == 0.0);
    CHECK(valve_flow(lin, 1.0, up, 1.40e5) == 0.0);  // reverse gradient
    const double full = valve_flow(lin, 1.0, up, 1.10e5);
    CHECK(full == doctest::Approx(std::sqrt(0.2e5 * up.density)));
    CHECK(valve_flow(lin, 0.5, up, 1.10e5) == doctest::Approx(0.5 * full));

    ValveModel eqp{1.0, ValveCharacteristic::kEqualPercentage, 50.0};
    CHECK(valve_flow(eqp, 0.0, up, 1.10e5) == 0.0);
    double prev = 0.0;
    for (double u = 0.1; u <= 1.0; u += 0.1) {
        const double m = valve_flow(eqp, u, up, 1.10e5);
        CHECK(m > prev);
        prev = m;
    }
    CHECK(valve_flow(eqp, 1.0, up, 1.10e5) == doctest::Approx(full));
    CHECK_THROWS_AS(valve_flow(lin, 1.4, up, 1.10e5), std::invalid_argument);
}
