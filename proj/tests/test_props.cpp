#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lh2/props.hpp"

using namespace lh2::props;

namespace {

bool throws_mentioning(void (*fn)(), const char* needle) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

}  // namespace

TEST_CASE("saturation anchors at atmospheric and 1.10 bara") {
    // Reference points cross-checked against published parahydrogen data.
    const SaturationPoint nbp = sat_point(1.013e5);
    CHECK(nbp.temperature == doctest::Approx(20.2693).epsilon(0.002));
    CHECK(nbp.vapor.density == doctest::Approx(1.338).epsilon(0.002));
    CHECK(nbp.vapor.enthalpy - nbp.liquid.enthalpy ==
          doctest::Approx(445400.0).epsilon(0.002));

    const SaturationPoint op = sat_point(1.10e5);
    CHECK(op.temperature == doctest::Approx(20.5500).epsilon(0.002));
    CHECK(op.liquid.density == doctest::Approx(70.505).epsilon(0.002));
    CHECK(op.liquid.enthalpy == doctest::Approx(2818.764).epsilon(0.002));
    CHECK(op.liquid.entropy == doctest::Approx(132.0957).epsilon(0.002));
    CHECK(op.vapor.density == doctest::Approx(1.441348).epsilon(0.002));
    CHECK(op.vapor.enthalpy - op.liquid.enthalpy ==
          doctest::Approx(444700.0).epsilon(0.002));

    CHECK(sat_point(1.15e5).temperature == doctest::Approx(20.7045).epsilon(0.002));
}

TEST_CASE("Clausius-Clapeyron closure across 0.5 to 5 bara") {
    for (double p = 0.5e5; p <= 5.0e5; p *= 1.18) {
        const SaturationPoint sp = sat_point(p);
        const double dT = 1e-3;
        const double dpdt = (sat_pressure(sp.temperature + dT) -
                             sat_pressure(sp.temperature - dT)) /
                            (2.0 * dT);
        const double dnu =
            1.0 / sp.vapor.density - 1.0 / sp.liquid.density;
        const double cc = (sp.vapor.enthalpy - sp.liquid.enthalpy) /
                          (sp.temperature * dnu);
        CHECK(dpdt == doctest::Approx(cc).epsilon(0.03));
    }
    const double dT = 1e-3;
    const double slope =
        (sat_pressure(20.55 + dT) - sat_pressure(20.55 - dT)) / (2.0 * dT);
    CHECK(slope == doctest::Approx(31841.56).epsilon(0.01));
}

TEST_CASE("saturation curves are monotone in pressure") {
    double prev_t = 0.0, prev_hl = -1e9, prev_rv = 0.0, prev_rl = 1e9;
    for (double p = min_pressure() * 1.0001; p < max_pressure();
         p *= 1.045) {
        const SaturationPoint sp = sat_point(p);
        CHECK(sp.temperature > prev_t);
        CHECK(sp.liquid.enthalpy > prev_hl);
        CHECK(sp.vapor.density > prev_rv);
        CHECK(sp.liquid.density < prev_rl);
        CHECK(sp.vapor.enthalpy > sp.liquid.enthalpy);
        CHECK(sp.vapor.entropy > sp.liquid.entropy);
        prev_t = sp.temperature;
        prev_hl = sp.liquid.enthalpy;
        prev_rv = sp.vapor.density;
        prev_rl = sp.liquid.density;
    }
}

TEST_CASE("temperature-pressure inversion round trip") {
    for (double p = 0.55e5; p < 8.0e5; p *= 1.31) {
        CHECK(sat_pressure(sat_temperature(p)) ==
              doctest::Approx(p).epsilon(1e-6));
    }
    for (double t = 14.5; t < 29.5; t += 1.7) {
        CHECK(sat_temperature(sat_pressure(t)) ==
              doctest::Approx(t).epsilon(1e-7));
    }
}

TEST_CASE("two-phase lever rule") {
    const double p = 1.10e5;
    const SaturationPoint sp = sat_point(p);
    const FluidState mix = two_phase_state(p, 0.3);
    CHECK(mix.enthalpy ==
          doctest::Approx(0.7 * sp.liquid.enthalpy + 0.3 * sp.vapor.enthalpy));
    CHECK(1.0 / mix.density ==
          doctest::Approx(0.7 / sp.liquid.density + 0.3 / sp.vapor.density));
    CHECK(mix.temperature == doctest::Approx(sp.temperature));

    // liquid_state hands back a dome state when h lands above saturated liquid
    const double h_mid =
        sp.liquid.enthalpy + 0.42 * (sp.vapor.enthalpy - sp.liquid.enthalpy);
    const FluidState f = liquid_state(p, h_mid);
    CHECK(f.quality == doctest::Approx(0.42).epsilon(1e-9));
    CHECK(f.temperature == doctest::Approx(sp.temperature));
    CHECK_THROWS_AS(two_phase_state(p, 1.2), std::invalid_argument);
}

TEST_CASE("subcooled liquid states") {
    // Pumping saturated liquid from 1.10 to 3.10 bara at constant enthalpy
    // cools it slightly below the local saturation temperature.
    const double h = sat_point(1.10e5).liquid.enthalpy;
    const FluidState f = liquid_state(3.10e5, h);
    CHECK(f.temperature == doctest::Approx(20.3675).epsilon(2e-4));
    CHECK(f.quality == kQualitySubcooled);
    CHECK(f.density > 70.0);

    // ds = dh/T along an isobar
    const double p = 2.0e5;
    const double h0 = sat_point(p).liquid.enthalpy - 4000.0;
    const FluidState a = liquid_state(p, h0);
    const FluidState b = liquid_state(p, h0 + 200.0);
    const double t_mid = 0.5 * (a.temperature + b.temperature);
    CHECK(b.entropy - a.entropy ==
          doctest::Approx(200.0 / t_mid).epsilon(0.005));
}

TEST_CASE("liquid heat capacity near the normal boiling point") {
    const double p = 1.013e5;
    const double hsat = sat_point(p).liquid.enthalpy;
    const FluidState a = liquid_state(p, hsat - 900.0);
    const FluidState b = liquid_state(p, hsat - 100.0);
    const double cp = 800.0 / (b.temperature - a.temperature);
    CHECK(cp == doctest::Approx(9690.0).epsilon(0.02));
}

TEST_CASE("superheated vapor lookups") {
    const FluidState v = vapor_state(1.10e5, 22.0);
    CHECK(v.density == doctest::Approx(1.32418).epsilon(0.002));
    CHECK(v.enthalpy == doctest::Approx(464208.14).epsilon(0.002));
    CHECK(v.entropy == doctest::Approx(22556.848).epsilon(0.002));
    CHECK(v.quality == kQualitySuperheated);

    const FluidState back = vapor_state_by_enthalpy(1.10e5, v.enthalpy);
    CHECK(back.temperature == doctest::Approx(22.0).epsilon(1e-6));

    // saturated end of the isobar matches the dome
    const SaturationPoint sp = sat_point(1.30e5);
    const FluidState sat_v = vapor_state_by_enthalpy(1.30e5, sp.vapor.enthalpy);
    CHECK(sat_v.temperature == doctest::Approx(sp.temperature).epsilon(1e-7));
    CHECK(sat_v.density == doctest::Approx(sp.vapor.density).epsilon(1e-6));

    // ds = dh/T along the isobar, vapor side
    const FluidState c = vapor_state(1.10e5, 24.0);
    const FluidState d = vapor_state(1.10e5, 24.5);
    const double t_mid = 0.5 * (c.temperature + d.temperature);
    CHECK(d.entropy - c.entropy ==
          doctest::Approx((d.enthalpy - c.enthalpy) / t_mid).epsilon(0.005));
}

TEST_CASE("ideal-gas limit of the vapor surface") {
    // At 2x saturation temperature and 1 bara the vapor should be within a
    // few percent of PV = nRT (R/M = 4124.2 J/kg K for H2).
    const FluidState v = vapor_state(1.0e5, 40.0);
    CHECK(v.density == doctest::Approx(1.0e5 / (4124.2 * 40.0)).epsilon(0.03));
}

TEST_CASE("out-of-range requests name the violated bound") {
    CHECK(throws_mentioning([] { (void)sat_point(1.0e3); }, "below the table minimum"));
    CHECK(throws_mentioning([] { (void)sat_point(5.0e6); }, "above the table maximum"));
    CHECK(throws_mentioning([] { (void)sat_pressure(5.0); }, "below the table minimum"));
    CHECK(throws_mentioning([] { (void)sat_pressure(40.0); }, "above the table maximum"));
    CHECK(throws_mentioning([] { (void)liquid_state(1.1e5, -4.0e5); }, "minimum"));
    CHECK(throws_mentioning([] { (void)liquid_state(1.1e5, 6.0e5); }, "saturated vapor"));
    CHECK(throws_mentioning([] { (void)vapor_state(1.1e5, 19.0); }, "saturation"));
    CHECK(throws_mentioning([] { (void)vapor_state(1.1e5, 90.0); }, "maximum"));
    // the vapor surface stops well short of the saturation table's top pressure
    CHECK(throws_mentioning([] { (void)vapor_state(9.5e5, 33.0); },
                            "above the table maximum"));
}

TEST_CASE("transport property fits") {
    CHECK(liquid_viscosity(20.55) == doctest::Approx(13.07e-6).epsilon(0.01));
    CHECK(vapor_viscosity(20.0) == doctest::Approx(1.09e-6).epsilon(1e-9));
    CHECK(liquid_viscosity(15.0) > liquid_viscosity(25.0));
    CHECK(vapor_viscosity(30.0) > vapor_viscosity(20.0));
}

TEST_CASE("saturation audit table") {
    std::ostringstream os;
    write_saturation_csv(os);
    const std::string s = os.str();
    CHECK(s.rfind("pressure_pa,t_sat_k,", 0) == 0);
    size_t rows = 0;
    for (char ch : s)
        if (ch == '\n') ++rows;
    CHECK(rows == 241);  // header + one line per pressure knot
}
