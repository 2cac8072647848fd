// Parahydrogen property provider backed by tables embedded at build time.
//
// Layout of the embedded data (see scripts/make_tables.py):
//   - saturation curves on a 240-knot grid, uniform in ln(P);
//   - compressed-liquid surface: per pressure knot, 64 enthalpy knots spanning
//     [table floor, saturated liquid] linearly;
//   - superheated-vapor surface: per pressure knot (first 212 rows only), 64
//     enthalpy knots spanning [saturated vapor, table ceiling].
// Single-phase lookups map the query enthalpy to the normalized position
// within each bracketing row so the saturation boundary stays exactly aligned
// across pressures, then blend rows linearly in ln(P).  All interpolation is
// monotone cubic.

#include "lh2/props.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "lh2/numerics.hpp"
#include "props/parahydrogen_tables.inc"

namespace lh2::props {
namespace {

using namespace lh2::props::data;

constexpr double kLnPStep = (kLnP[kNP - 1] - kLnP[0]) / (kNP - 1);

[[noreturn]] void fail_range(const char* what, double value, const char* bound,
                             double limit, const char* unit) {
    const bool lower = bound[0] == 'm' && bound[1] == 'i';
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.6g %s is %s the table %s of %.6g %s",
                  what, value, unit, lower ? "below" : "above", bound, limit,
                  unit);
    throw std::invalid_argument(buf);
}

// Index of the saturation-grid interval containing lnp, clamped to the grid.
int lnp_interval(double lnp, int n_rows) {
    int i = static_cast<int>((lnp - kLnP[0]) / kLnPStep);
    return std::clamp(i, 0, n_rows - 2);
}

// Monotone-cubic evaluation of one saturation-grid curve at lnp.
double sat_curve(const double* ys, double lnp) {
    const int i = lnp_interval(lnp, kNP);
    const int i0 = std::max(i - 1, 0), i3 = std::min(i + 2, kNP - 1);
    const double xs[4] = {kLnP[i0], kLnP[i], kLnP[i + 1], kLnP[i3]};
    const double yv[4] = {ys[i0], ys[i], ys[i + 1], ys[i3]};
    return num::pchip_local(lnp, xs, yv);
}

// Same curves keyed by temperature (the saturation grid is monotone in T).
double sat_curve_t(const double* ys, double t) {
    const double* pos = std::upper_bound(kSatT, kSatT + kNP, t);
    int i = std::clamp(static_cast<int>(pos - kSatT) - 1, 0, kNP - 2);
    const int i0 = std::max(i - 1, 0), i3 = std::min(i + 2, kNP - 1);
    const double xs[4] = {kSatT[i0], kSatT[i], kSatT[i + 1], kSatT[i3]};
    const double yv[4] = {ys[i0], ys[i], ys[i + 1], ys[i3]};
    return num::pchip_local(t, xs, yv);
}

void check_sat_pressure(double p) {
    const double pmin = std::exp(kLnP[0]), pmax = std::exp(kLnP[kNP - 1]);
    if (!(p >= pmin)) fail_range("pressure", p, "minimum", pmin, "Pa");
    if (!(p <= pmax)) fail_range("pressure", p, "maximum", pmax, "Pa");
}

// One row of a single-phase surface: 64 values on a uniform enthalpy grid.
struct Row {
    const double* y;
    double h0, h1;
    double at(double h) const {
        const double dh = (h1 - h0) / (kNH - 1);
        int j = std::clamp(static_cast<int>((h - h0) / dh), 0, kNH - 2);
        const int j0 = std::max(j - 1, 0), j3 = std::min(j + 2, kNH - 1);
        const double xs[4] = {h0 + j0 * dh, h0 + j * dh, h0 + (j + 1) * dh,
                              h0 + j3 * dh};
        const double yv[4] = {y[j0], y[j], y[j + 1], y[j3]};
        return num::pchip_local(h, xs, yv);
    }
};

// Blend two bracketing rows of a surface at normalized enthalpy theta.
// rows_lo/rows_hi give each row's enthalpy span.
struct Surface {
    const double* values;   // n_rows x kNH
    const double* row_lo;   // enthalpy at theta = 0 per row
    const double* row_hi;   // enthalpy at theta = 1 per row
    int n_rows;

    double at(double lnp, double theta) const {
        const int i = lnp_interval(lnp, n_rows);
        const int i0 = std::max(i - 1, 0), i3 = std::min(i + 2, n_rows - 1);
        const int idx[4] = {i0, i, i + 1, i3};
        double xs[4], yv[4];
        for (int k = 0; k < 4; ++k) {
            const int r = idx[k];
            const Row row{values + r * kNH, row_lo[r], row_hi[r]};
            xs[k] = kLnP[r];
            yv[k] = row.at(row.h0 + theta * (row.h1 - row.h0));
        }
        return num::pchip_local(lnp, xs, yv);
    }
};

constexpr Surface kLiqTSurf{kLiqT, kLiqHMin, kSatHL, kNP};
constexpr Surface kLiqRhoSurf{kLiqRho, kLiqHMin, kSatHL, kNP};
constexpr Surface kLiqSSurf{kLiqS, kLiqHMin, kSatHL, kNP};
constexpr Surface kVapTSurf{kVapT, kSatHV, kVapHMax, kNPVap};
constexpr Surface kVapRhoSurf{kVapRho, kSatHV, kVapHMax, kNPVap};
constexpr Surface kVapSSurf{kVapS, kSatHV, kVapHMax, kNPVap};

FluidState saturated(double p, double t, const double* rho, const double* h,
                     const double* s, double lnp, double quality) {
    FluidState f;
    f.pressure = p;
    f.temperature = t;
    f.density = sat_curve(rho, lnp);
    f.enthalpy = sat_curve(h, lnp);
    f.entropy = sat_curve(s, lnp);
    f.quality = quality;
    return f;
}

}  // namespace

double min_pressure() { return std::exp(kLnP[0]); }
double max_pressure() { return std::exp(kLnP[kNP - 1]); }
double min_temperature() { return kSatT[0]; }
double max_temperature() { return kSatT[kNP - 1]; }

double sat_temperature(double pressure) {
    check_sat_pressure(pressure);
    return sat_curve(kSatT, std::log(pressure));
}

double sat_pressure(double temperature) {
    if (!(temperature >= kSatT[0]))
        fail_range("temperature", temperature, "minimum", kSatT[0], "K");
    if (!(temperature <= kSatT[kNP - 1]))
        fail_range("temperature", temperature, "maximum", kSatT[kNP - 1], "K");
    return std::exp(sat_curve_t(kLnP, temperature));
}

SaturationPoint sat_point(double pressure) {
    check_sat_pressure(pressure);
    const double lnp = std::log(pressure);
    SaturationPoint sp;
    sp.pressure = pressure;
    sp.temperature = sat_curve(kSatT, lnp);
    sp.liquid = saturated(pressure, sp.temperature, kSatRhoL, kSatHL, kSatSL,
                          lnp, 0.0);
    sp.vapor = saturated(pressure, sp.temperature, kSatRhoV, kSatHV, kSatSV,
                         lnp, 1.0);
    return sp;
}

SaturationPoint sat_point_t(double temperature) {
    return sat_point(sat_pressure(temperature));
}

FluidState two_phase_state(double pressure, double quality) {
    if (quality < 0.0 || quality > 1.0)
        throw std::invalid_argument("two_phase_state: quality outside [0,1]");
    const SaturationPoint sp = sat_point(pressure);
    FluidState f;
    f.pressure = pressure;
    f.temperature = sp.temperature;
    const double nu = (1.0 - quality) / sp.liquid.density +
                      quality / sp.vapor.density;
    f.density = 1.0 / nu;
    f.enthalpy = sp.liquid.enthalpy +
                 quality * (sp.vapor.enthalpy - sp.liquid.enthalpy);
    f.entropy = sp.liquid.entropy +
                quality * (sp.vapor.entropy - sp.liquid.entropy);
    f.quality = quality;
    return f;
}

FluidState liquid_state(double pressure, double enthalpy) {
    check_sat_pressure(pressure);
    const double lnp = std::log(pressure);
    const double hl = sat_curve(kSatHL, lnp);
    const double hv = sat_curve(kSatHV, lnp);
    if (enthalpy > hv)
        fail_range("liquid_state: enthalpy", enthalpy, "maximum (saturated vapor)",
                   hv, "J/kg");
    if (enthalpy > hl) {  // inside the dome, e.g. downstream of a flashing valve
        const double x = (enthalpy - hl) / (hv - hl);
        return two_phase_state(pressure, x);
    }
    const double hmin = sat_curve(kLiqHMin, lnp);
    if (enthalpy < hmin)
        fail_range("liquid_state: enthalpy", enthalpy, "minimum", hmin, "J/kg");
    const double theta = (hl > hmin) ? (enthalpy - hmin) / (hl - hmin) : 1.0;
    FluidState f;
    f.pressure = pressure;
    f.enthalpy = enthalpy;
    f.temperature = kLiqTSurf.at(lnp, theta);
    f.density = kLiqRhoSurf.at(lnp, theta);
    f.entropy = kLiqSSurf.at(lnp, theta);
    f.quality = kQualitySubcooled;
    return f;
}

FluidState vapor_state_by_enthalpy(double pressure, double enthalpy) {
    check_sat_pressure(pressure);
    const double lnp = std::log(pressure);
    if (lnp > kLnP[kNPVap - 1])
        fail_range("vapor pressure", pressure, "maximum",
                   std::exp(kLnP[kNPVap - 1]), "Pa");
    const double h0 = sat_curve(kSatHV, lnp);
    const double h1 = sat_curve(kVapHMax, lnp);
    if (enthalpy < h0 - 1e-9 * std::fabs(h0))
        fail_range("vapor_state: enthalpy", enthalpy,
                   "minimum (saturated vapor)", h0, "J/kg");
    if (enthalpy > h1)
        fail_range("vapor_state: enthalpy", enthalpy, "maximum", h1, "J/kg");
    const double theta = std::clamp((enthalpy - h0) / (h1 - h0), 0.0, 1.0);
    FluidState f;
    f.pressure = pressure;
    f.enthalpy = enthalpy;
    f.temperature = kVapTSurf.at(lnp, theta);
    f.density = kVapRhoSurf.at(lnp, theta);
    f.entropy = kVapSSurf.at(lnp, theta);
    f.quality = theta == 0.0 ? 1.0 : kQualitySuperheated;
    return f;
}

double liquid_temperature(double pressure, double enthalpy) {
    check_sat_pressure(pressure);
    const double lnp = std::log(pressure);
    const double hl = sat_curve(kSatHL, lnp);
    if (enthalpy >= hl) return sat_curve(kSatT, lnp);
    const double hmin = sat_curve(kLiqHMin, lnp);
    if (enthalpy < hmin)
        fail_range("liquid_temperature: enthalpy", enthalpy, "minimum", hmin,
                   "J/kg");
    return kLiqTSurf.at(lnp, (enthalpy - hmin) / (hl - hmin));
}

double vapor_temperature_by_enthalpy(double pressure, double enthalpy) {
    check_sat_pressure(pressure);
    const double lnp = std::log(pressure);
    if (lnp > kLnP[kNPVap - 1])
        fail_range("vapor pressure", pressure, "maximum",
                   std::exp(kLnP[kNPVap - 1]), "Pa");
    const double h0 = sat_curve(kSatHV, lnp);
    if (enthalpy <= h0) return sat_curve(kSatT, lnp);
    const double h1 = sat_curve(kVapHMax, lnp);
    if (enthalpy > h1)
        fail_range("vapor_temperature: enthalpy", enthalpy, "maximum", h1,
                   "J/kg");
    return kVapTSurf.at(lnp, (enthalpy - h0) / (h1 - h0));
}

FluidState vapor_state(double pressure, double temperature) {
    check_sat_pressure(pressure);
    const double lnp = std::log(pressure);
    if (lnp > kLnP[kNPVap - 1])
        fail_range("vapor pressure", pressure, "maximum",
                   std::exp(kLnP[kNPVap - 1]), "Pa");
    const double tsat = sat_curve(kSatT, lnp);
    if (temperature < tsat - 1e-9)
        fail_range("vapor_state: temperature", temperature,
                   "minimum (saturation)", tsat, "K");
    const double tmax = kVapTSurf.at(lnp, 1.0);
    if (temperature > tmax)
        fail_range("vapor_state: temperature", temperature, "maximum", tmax, "K");
    // T rises monotonically with enthalpy along the isobar; bisect theta.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kVapTSurf.at(lnp, mid) < temperature ? lo : hi) = mid;
    }
    const double theta = 0.5 * (lo + hi);
    const double h0 = sat_curve(kSatHV, lnp);
    const double h1 = sat_curve(kVapHMax, lnp);
    FluidState f = vapor_state_by_enthalpy(pressure, h0 + theta * (h1 - h0));
    f.temperature = temperature;  // suppress inversion round-off
    return f;
}

// Dilute-fluid viscosity fits used only for Reynolds numbers; anchored to
// ~13.2 uPa s saturated liquid near 20.5 K and ~1.1 uPa s vapor at 20 K.
double liquid_viscosity(double temperature) {
    return 3.565e-6 * std::exp(26.7 / temperature);
}

double vapor_viscosity(double temperature) {
    return 1.09e-6 * std::pow(temperature / 20.0, 0.77);
}

void write_saturation_csv(std::ostream& os) {
    os << "pressure_pa,t_sat_k,rho_liq_kg_m3,rho_vap_kg_m3,"
          "h_liq_j_kg,h_vap_j_kg,s_liq_j_kgk,s_vap_j_kgk\n";
    char line[220];
    for (int i = 0; i < kNP; ++i) {
        std::snprintf(line, sizeof line,
                      "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      std::exp(kLnP[i]), kSatT[i], kSatRhoL[i], kSatRhoV[i],
                      kSatHL[i], kSatHV[i], kSatSL[i], kSatSV[i]);
        os << line;
    }
}

}  // namespace lh2::props
