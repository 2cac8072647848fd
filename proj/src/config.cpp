#include "lh2/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lh2::cfg {
namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "config parse error at line %d: %s", line,
                  what.c_str());
    throw std::invalid_argument(buf);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

bool valid_section(const std::string& s) {
    if (s.empty() || s.front() == '.' || s.back() == '.') return false;
    std::string part;
    for (char c : s) {
        if (c == '.') {
            if (part.empty()) return false;
            part.clear();
        } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            part += c;
        } else {
            return false;
        }
    }
    return !part.empty();
}

struct Extractor {
    const std::map<std::string, std::string>& raw;
    std::set<std::string> consumed;
    std::vector<std::string> errors;

    const std::string* find(const std::string& key) {
        auto it = raw.find(key);
        if (it == raw.end()) return nullptr;
        consumed.insert(key);
        return &it->second;
    }

    void fail(const std::string& key, const std::string& why) {
        errors.push_back(key + ": " + why);
    }

    void number(const std::string& key, double* out) {
        const std::string* v = find(key);
        if (!v) return;
        const char* text = v->c_str();
        char* end = nullptr;
        double x = std::strtod(text, &end);
        if (end == text || *end != '\0' || !std::isfinite(x)) {
            fail(key, "expected a finite number, got '" + *v + "'");
            return;
        }
        *out = x;
    }

    void integer(const std::string& key, int* out) {
        double x = *out;
        size_t before = errors.size();
        number(key, &x);
        if (errors.size() != before) return;
        if (x != std::floor(x) || std::fabs(x) > 1e9) {
            fail(key, "expected an integer");
            return;
        }
        *out = static_cast<int>(x);
    }

    void unsigned64(const std::string& key, std::uint64_t* out) {
        const std::string* v = find(key);
        if (!v) return;
        const char* text = v->c_str();
        char* end = nullptr;
        unsigned long long x = std::strtoull(text, &end, 10);
        if (end == text || *end != '\0') {
            fail(key, "expected an unsigned integer, got '" + *v + "'");
            return;
        }
        *out = x;
    }

    void text(const std::string& key, std::string* out) {
        const std::string* v = find(key);
        if (!v) return;
        std::string s = *v;
        if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
            s = s.substr(1, s.size() - 2);
        }
        if (s.find('"') != std::string::npos) {
            fail(key, "malformed string '" + *v + "'");
            return;
        }
        *out = s;
    }

    void range(const std::string& key, UgsaRange* out) {
        const std::string* v = find(key);
        if (!v) return;
        std::string s = trim(*v);
        if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
            fail(key, "expected [lo, hi], got '" + *v + "'");
            return;
        }
        s = s.substr(1, s.size() - 2);
        std::vector<double> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            const char* text = item.c_str();
            char* end = nullptr;
            double x = std::strtod(text, &end);
            if (end == text || *end != '\0' || !std::isfinite(x)) {
                fail(key, "expected [lo, hi] of numbers, got '" + *v + "'");
                return;
            }
            parts.push_back(x);
        }
        if (parts.size() != 2) {
            fail(key, "expected exactly two entries, got '" + *v + "'");
            return;
        }
        out->lo = parts[0];
        out->hi = parts[1];
    }
};

void extract_tank(Extractor& ex, const std::string& sec, TankSettings* t) {
    ex.number(sec + ".volume_m3", &t->volume);
    ex.number(sec + ".overall_u_w_m2k", &t->overall_u);
    ex.number(sec + ".ambient_temperature_k", &t->ambient_temperature);
    ex.number(sec + ".max_working_pressure_pa", &t->max_working_pressure);
    ex.number(sec + ".initial_fill_fraction", &t->initial_fill);
    ex.number(sec + ".initial_pressure_pa", &t->initial_pressure);
    ex.number(sec + ".pressure_set_point_pa", &t->pressure_set_point);
    ex.number(sec + ".stop_fill_fraction", &t->stop_fill);
}

void extract_pipe(Extractor& ex, const std::string& sec, PipeSettings* p) {
    ex.number(sec + ".length_m", &p->length);
    ex.number(sec + ".internal_diameter_m", &p->internal_diameter);
    ex.number(sec + ".roughness_m", &p->roughness);
    ex.number(sec + ".heat_ingress_w_m", &p->heat_ingress_per_m);
    ex.integer(sec + ".cells", &p->cells);
    ex.integer(sec + ".parallel_lines", &p->parallel_lines);
    ex.number(sec + ".wall_heat_capacity_j_km", &p->wall_heat_capacity_per_m);
    ex.number(sec + ".wall_conductance_w_km", &p->wall_conductance_per_m);
    ex.number(sec + ".wall_temperature_cap_k", &p->wall_temperature_cap);
}

void extract_valve(Extractor& ex, const std::string& sec, ValveSettings* v) {
    ex.number(sec + ".flow_coefficient", &v->flow_coefficient);
    ex.text(sec + ".characteristic", &v->characteristic);
    ex.number(sec + ".rangeability", &v->rangeability);
}

void extract_loop(Extractor& ex, const std::string& sec, LoopSettings* l) {
    ex.number(sec + ".plant_gain", &l->plant_gain);
    ex.number(sec + ".plant_tau_s", &l->plant_tau);
    ex.number(sec + ".plant_theta_s", &l->plant_theta);
    ex.number(sec + ".closed_loop_tc_s", &l->closed_loop_tc);
    ex.number(sec + ".setpoint_weight", &l->setpoint_weight);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit_tank(std::string& out, const std::string& sec, const TankSettings& t) {
    out += "[" + sec + "]\n";
    out += "volume_m3 = " + fmt(t.volume) + "\n";
    out += "overall_u_w_m2k = " + fmt(t.overall_u) + "\n";
    out += "ambient_temperature_k = " + fmt(t.ambient_temperature) + "\n";
    out += "max_working_pressure_pa = " + fmt(t.max_working_pressure) + "\n";
    out += "initial_fill_fraction = " + fmt(t.initial_fill) + "\n";
    out += "initial_pressure_pa = " + fmt(t.initial_pressure) + "\n";
    out += "pressure_set_point_pa = " + fmt(t.pressure_set_point) + "\n";
    out += "stop_fill_fraction = " + fmt(t.stop_fill) + "\n\n";
}

void emit_pipe(std::string& out, const std::string& sec, const PipeSettings& p) {
    out += "[" + sec + "]\n";
    out += "length_m = " + fmt(p.length) + "\n";
    out += "internal_diameter_m = " + fmt(p.internal_diameter) + "\n";
    out += "roughness_m = " + fmt(p.roughness) + "\n";
    out += "heat_ingress_w_m = " + fmt(p.heat_ingress_per_m) + "\n";
    out += "cells = " + std::to_string(p.cells) + "\n";
    out += "parallel_lines = " + std::to_string(p.parallel_lines) + "\n";
    out += "wall_heat_capacity_j_km = " + fmt(p.wall_heat_capacity_per_m) + "\n";
    out += "wall_conductance_w_km = " + fmt(p.wall_conductance_per_m) + "\n";
    out += "wall_temperature_cap_k = " + fmt(p.wall_temperature_cap) + "\n\n";
}

void emit_valve(std::string& out, const std::string& sec, const ValveSettings& v) {
    out += "[" + sec + "]\n";
    out += "flow_coefficient = " + fmt(v.flow_coefficient) + "\n";
    out += "characteristic = \"" + v.characteristic + "\"\n";
    out += "rangeability = " + fmt(v.rangeability) + "\n\n";
}

void emit_loop(std::string& out, const std::string& sec, const LoopSettings& l) {
    out += "[" + sec + "]\n";
    out += "plant_gain = " + fmt(l.plant_gain) + "\n";
    out += "plant_tau_s = " + fmt(l.plant_tau) + "\n";
    out += "plant_theta_s = " + fmt(l.plant_theta) + "\n";
    out += "closed_loop_tc_s = " + fmt(l.closed_loop_tc) + "\n";
    out += "setpoint_weight = " + fmt(l.setpoint_weight) + "\n\n";
}

void emit_range(std::string& out, const std::string& key, const UgsaRange& r) {
    out += key + " = [" + fmt(r.lo) + ", " + fmt(r.hi) + "]\n";
}

}  // namespace

ScenarioConfig default_config() {
    ScenarioConfig c;

    c.onshore.volume = 50000.0;
    c.onshore.overall_u = 4.3908e-3;
    c.onshore.max_working_pressure = 2.5e5;
    c.onshore.initial_fill = 0.90;
    c.onshore.initial_pressure = 1.09e5;
    c.onshore.pressure_set_point = 1.10e5;
    c.onshore.stop_fill = 1.0;

    c.seaborne.volume = 45000.0;
    c.seaborne.overall_u = 4.4183e-3;
    c.seaborne.max_working_pressure = 1.15e5;
    c.seaborne.initial_fill = 0.011;
    c.seaborne.initial_pressure = 1.15e5;
    c.seaborne.pressure_set_point = 1.15e5;
    c.seaborne.stop_fill = 0.90;

    c.pump = eq::PumpModel{};

    c.liquid_pipe.length = 1100.0;
    c.liquid_pipe.internal_diameter = 0.406;
    c.liquid_pipe.roughness = 0.07e-3;
    c.liquid_pipe.heat_ingress_per_m = 8.5;
    c.liquid_pipe.cells = 20;
    c.liquid_pipe.parallel_lines = 2;
    c.liquid_pipe.wall_heat_capacity_per_m = 717.0;
    c.liquid_pipe.wall_conductance_per_m = 100.0;
    c.liquid_pipe.wall_temperature_cap = 29.0;

    c.vapor_pipe.length = 1100.0;
    c.vapor_pipe.internal_diameter = 0.508;
    c.vapor_pipe.roughness = 0.07e-3;
    c.vapor_pipe.heat_ingress_per_m = 1.0;
    c.vapor_pipe.cells = 4;
    c.vapor_pipe.parallel_lines = 2;
    c.vapor_pipe.wall_heat_capacity_per_m = 900.0;
    c.vapor_pipe.wall_conductance_per_m = 100.0;
    c.vapor_pipe.wall_temperature_cap = 55.0;

    c.throttle_valve.flow_coefficient = 0.16723;
    c.vapor_return_valve.flow_coefficient = 0.03872;
    c.liquefier_valve.flow_coefficient = 0.01493;
    c.liquefier_pressure = 1.03e5;

    c.control.mode = "split-range";
    c.control.flow_set_point = 3250.0;
    c.control.split_point = 0.5;
    c.control.sample_interval = 1.0;

    // Plant fits refreshed by the tune command at the nominal operating point.
    c.control.flow_loop = {7560.0, 0.52, 1.0, 1.0, 0.5};
    c.control.onshore_pressure_loop = {-0.70, 0.0, 1.0, 60.0, 0.5};
    c.control.seaborne_pressure_loop = {-2.40, 0.0, 1.0, 60.0, 0.5};

    c.ugsa.samples = 1000;
    c.ugsa.bootstrap_resamples = 100;
    c.ugsa.seed = 20260;
    c.ugsa.peak_efficiency = {0.50, 0.70};
    c.ugsa.pipe_heat = {5.5, 12.0};
    c.ugsa.roughness = {0.04e-3, 0.15e-3};
    c.ugsa.flow_set_point = {2560.0, 3585.0};
    c.ugsa.bor_onshore = {0.045, 0.123};
    c.ugsa.bor_seaborne = {0.046, 0.127};

    return c;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') parse_fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_section(section)) {
                parse_fail(line_no, "bad section name '" + section + "'");
            }
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            parse_fail(line_no, "expected key = value, got '" + line + "'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) parse_fail(line_no, "bad key '" + key + "'");
        if (value.empty()) parse_fail(line_no, "missing value for '" + key + "'");
        if (section.empty()) parse_fail(line_no, "key '" + key + "' outside a section");
        std::string full = section + "." + key;
        if (out.count(full)) parse_fail(line_no, "duplicate key '" + full + "'");
        out[full] = value;
    }
    return out;
}

ScenarioConfig load_config(const std::string& file_text,
                           const std::vector<std::string>& overrides) {
    std::map<std::string, std::string> raw = parse_config_text(file_text);
    for (const std::string& item : overrides) {
        size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= item.size()) {
            throw std::invalid_argument("override '" + item +
                                        "' is not of the form section.key=value");
        }
        std::string key = trim(item.substr(0, eq));
        size_t dot = key.rfind('.');
        if (dot == std::string::npos || !valid_section(key.substr(0, dot)) ||
            !valid_key(key.substr(dot + 1))) {
            throw std::invalid_argument("override '" + item +
                                        "' does not name section.key");
        }
        raw[key] = trim(item.substr(eq + 1));
    }

    ScenarioConfig c = default_config();
    Extractor ex{raw, {}, {}};

    extract_tank(ex, "tank.onshore", &c.onshore);
    extract_tank(ex, "tank.seaborne", &c.seaborne);

    ex.number("pump.reference_speed_hz", &c.pump.ref_speed);
    ex.number("pump.min_speed_hz", &c.pump.min_speed);
    ex.number("pump.max_speed_hz", &c.pump.max_speed);
    ex.number("pump.best_point_flow_m3h", &c.pump.best_point_flow);
    ex.number("pump.best_point_dp_pa", &c.pump.best_point_dp);
    ex.number("pump.shutoff_head_ratio", &c.pump.shutoff_head_ratio);
    ex.number("pump.peak_efficiency", &c.pump.peak_efficiency);
    ex.number("pump.efficiency_droop", &c.pump.efficiency_droop);
    ex.number("pump.efficiency_floor", &c.pump.efficiency_floor);

    extract_pipe(ex, "pipe.liquid", &c.liquid_pipe);
    extract_pipe(ex, "pipe.vapor", &c.vapor_pipe);

    extract_valve(ex, "valve.throttle", &c.throttle_valve);
    extract_valve(ex, "valve.vapor_return", &c.vapor_return_valve);
    extract_valve(ex, "valve.liquefier", &c.liquefier_valve);
    ex.number("valve.liquefier.downstream_pressure_pa", &c.liquefier_pressure);

    ex.text("control.mode", &c.control.mode);
    ex.number("control.flow_set_point_m3h", &c.control.flow_set_point);
    ex.number("control.split_point", &c.control.split_point);
    ex.number("control.sample_interval_s", &c.control.sample_interval);
    extract_loop(ex, "control.flow_loop", &c.control.flow_loop);
    extract_loop(ex, "control.onshore_pressure_loop", &c.control.onshore_pressure_loop);
    extract_loop(ex, "control.seaborne_pressure_loop", &c.control.seaborne_pressure_loop);

    ex.number("exergy.dead_state_temperature_k", &c.dead_state_temperature);

    ex.integer("ugsa.samples", &c.ugsa.samples);
    ex.integer("ugsa.bootstrap_resamples", &c.ugsa.bootstrap_resamples);
    ex.unsigned64("ugsa.seed", &c.ugsa.seed);
    ex.range("ugsa.peak_efficiency", &c.ugsa.peak_efficiency);
    ex.range("ugsa.pipe_heat_w_m", &c.ugsa.pipe_heat);
    ex.range("ugsa.roughness_m", &c.ugsa.roughness);
    ex.range("ugsa.flow_set_point_m3h", &c.ugsa.flow_set_point);
    ex.range("ugsa.bor_onshore_pct_day", &c.ugsa.bor_onshore);
    ex.range("ugsa.bor_seaborne_pct_day", &c.ugsa.bor_seaborne);

    ex.number("run.rel_tol", &c.run.rel_tol);
    ex.number("run.max_step_s", &c.run.max_step);
    ex.number("run.time_limit_s", &c.run.time_limit);
    ex.number("run.fill_reference_mass_kg", &c.run.fill_reference_mass);
    ex.number("run.fill_reference_volume_m3", &c.run.fill_reference_volume);
    ex.text("run.out_dir", &c.run.out_dir);

    std::vector<std::string> unknown;
    for (const auto& [key, value] : raw) {
        if (!ex.consumed.count(key)) unknown.push_back(key);
    }
    for (const std::string& key : unknown) {
        ex.errors.push_back(key + ": unknown key");
    }
    if (!ex.errors.empty()) {
        std::string msg = "config errors:";
        for (const std::string& e : ex.errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }

    validate_config(c);
    return c;
}

std::string serialize_config(const ScenarioConfig& c) {
    std::string out;
    out.reserve(4096);
    emit_tank(out, "tank.onshore", c.onshore);
    emit_tank(out, "tank.seaborne", c.seaborne);

    out += "[pump]\n";
    out += "reference_speed_hz = " + fmt(c.pump.ref_speed) + "\n";
    out += "min_speed_hz = " + fmt(c.pump.min_speed) + "\n";
    out += "max_speed_hz = " + fmt(c.pump.max_speed) + "\n";
    out += "best_point_flow_m3h = " + fmt(c.pump.best_point_flow) + "\n";
    out += "best_point_dp_pa = " + fmt(c.pump.best_point_dp) + "\n";
    out += "shutoff_head_ratio = " + fmt(c.pump.shutoff_head_ratio) + "\n";
    out += "peak_efficiency = " + fmt(c.pump.peak_efficiency) + "\n";
    out += "efficiency_droop = " + fmt(c.pump.efficiency_droop) + "\n";
    out += "efficiency_floor = " + fmt(c.pump.efficiency_floor) + "\n\n";

    emit_pipe(out, "pipe.liquid", c.liquid_pipe);
    emit_pipe(out, "pipe.vapor", c.vapor_pipe);

    emit_valve(out, "valve.throttle", c.throttle_valve);
    emit_valve(out, "valve.vapor_return", c.vapor_return_valve);

    out += "[valve.liquefier]\n";
    out += "flow_coefficient = " + fmt(c.liquefier_valve.flow_coefficient) + "\n";
    out += "characteristic = \"" + c.liquefier_valve.characteristic + "\"\n";
    out += "rangeability = " + fmt(c.liquefier_valve.rangeability) + "\n";
    out += "downstream_pressure_pa = " + fmt(c.liquefier_pressure) + "\n\n";

    out += "[control]\n";
    out += "mode = \"" + c.control.mode + "\"\n";
    out += "flow_set_point_m3h = " + fmt(c.control.flow_set_point) + "\n";
    out += "split_point = " + fmt(c.control.split_point) + "\n";
    out += "sample_interval_s = " + fmt(c.control.sample_interval) + "\n\n";
    emit_loop(out, "control.flow_loop", c.control.flow_loop);
    emit_loop(out, "control.onshore_pressure_loop", c.control.onshore_pressure_loop);
    emit_loop(out, "control.seaborne_pressure_loop", c.control.seaborne_pressure_loop);

    out += "[exergy]\n";
    out += "dead_state_temperature_k = " + fmt(c.dead_state_temperature) + "\n\n";

    out += "[ugsa]\n";
    out += "samples = " + std::to_string(c.ugsa.samples) + "\n";
    out += "bootstrap_resamples = " + std::to_string(c.ugsa.bootstrap_resamples) + "\n";
    out += "seed = " + std::to_string(c.ugsa.seed) + "\n";
    emit_range(out, "peak_efficiency", c.ugsa.peak_efficiency);
    emit_range(out, "pipe_heat_w_m", c.ugsa.pipe_heat);
    emit_range(out, "roughness_m", c.ugsa.roughness);
    emit_range(out, "flow_set_point_m3h", c.ugsa.flow_set_point);
    emit_range(out, "bor_onshore_pct_day", c.ugsa.bor_onshore);
    emit_range(out, "bor_seaborne_pct_day", c.ugsa.bor_seaborne);
    out += "\n[run]\n";
    out += "rel_tol = " + fmt(c.run.rel_tol) + "\n";
    out += "max_step_s = " + fmt(c.run.max_step) + "\n";
    out += "time_limit_s = " + fmt(c.run.time_limit) + "\n";
    out += "fill_reference_mass_kg = " + fmt(c.run.fill_reference_mass) + "\n";
    out += "fill_reference_volume_m3 = " + fmt(c.run.fill_reference_volume) + "\n";
    out += "out_dir = \"" + c.run.out_dir + "\"\n";
    return out;
}

eq::ValveCharacteristic valve_characteristic(const ValveSettings& valve) {
    if (valve.characteristic == "linear") return eq::ValveCharacteristic::kLinear;
    if (valve.characteristic == "equal-percentage") {
        return eq::ValveCharacteristic::kEqualPercentage;
    }
    throw std::invalid_argument("valve characteristic '" + valve.characteristic +
                                "' is neither linear nor equal-percentage");
}

eq::ValveModel make_valve(const ValveSettings& valve) {
    return eq::ValveModel{valve.flow_coefficient, valve_characteristic(valve),
                          valve.rangeability};
}

void validate_config(const ScenarioConfig& c) {
    std::vector<std::string> errors;
    auto require = [&errors](bool ok, const std::string& key, const char* why) {
        if (!ok) errors.push_back(key + ": " + why);
    };

    auto check_tank = [&](const std::string& sec, const TankSettings& t) {
        require(t.volume > 0.0, sec + ".volume_m3", "must be positive");
        require(t.overall_u >= 0.0, sec + ".overall_u_w_m2k", "must be nonnegative");
        require(t.ambient_temperature > 0.0, sec + ".ambient_temperature_k",
                "must be positive");
        require(t.initial_fill > 0.0 && t.initial_fill < 1.0,
                sec + ".initial_fill_fraction", "must lie in (0, 1)");
        require(t.initial_pressure > 0.0, sec + ".initial_pressure_pa",
                "must be positive");
        require(t.pressure_set_point > 0.0, sec + ".pressure_set_point_pa",
                "must be positive");
        require(t.max_working_pressure >= t.initial_pressure,
                sec + ".max_working_pressure_pa", "must be at least the initial pressure");
        require(t.stop_fill > t.initial_fill && t.stop_fill <= 1.0,
                sec + ".stop_fill_fraction", "must exceed the initial fill, at most 1");
    };
    check_tank("tank.onshore", c.onshore);
    check_tank("tank.seaborne", c.seaborne);

    require(c.pump.min_speed > 0.0 && c.pump.max_speed >= c.pump.min_speed,
            "pump.min_speed_hz", "speed window must satisfy 0 < min <= max");
    require(c.pump.ref_speed > 0.0, "pump.reference_speed_hz", "must be positive");
    require(c.pump.best_point_flow > 0.0, "pump.best_point_flow_m3h", "must be positive");
    require(c.pump.best_point_dp > 0.0, "pump.best_point_dp_pa", "must be positive");
    require(c.pump.shutoff_head_ratio > 1.0, "pump.shutoff_head_ratio",
            "must exceed 1");
    require(c.pump.peak_efficiency > 0.0 && c.pump.peak_efficiency <= 1.0,
            "pump.peak_efficiency", "must lie in (0, 1]");
    require(c.pump.efficiency_droop >= 0.0, "pump.efficiency_droop",
            "must be nonnegative");
    require(c.pump.efficiency_floor > 0.0 &&
                c.pump.efficiency_floor <= c.pump.peak_efficiency,
            "pump.efficiency_floor", "must lie in (0, peak]");

    auto check_pipe = [&](const std::string& sec, const PipeSettings& p) {
        require(p.length > 0.0, sec + ".length_m", "must be positive");
        require(p.internal_diameter > 0.0, sec + ".internal_diameter_m",
                "must be positive");
        require(p.roughness >= 0.0, sec + ".roughness_m", "must be nonnegative");
        require(p.heat_ingress_per_m >= 0.0, sec + ".heat_ingress_w_m",
                "must be nonnegative");
        require(p.cells >= 1, sec + ".cells", "must be at least 1");
        require(p.parallel_lines >= 1, sec + ".parallel_lines", "must be at least 1");
        require(p.wall_heat_capacity_per_m > 0.0, sec + ".wall_heat_capacity_j_km",
                "must be positive");
        require(p.wall_conductance_per_m > 0.0, sec + ".wall_conductance_w_km",
                "must be positive");
        require(p.wall_temperature_cap > 14.0, sec + ".wall_temperature_cap_k",
                "must exceed the property floor");
    };
    check_pipe("pipe.liquid", c.liquid_pipe);
    check_pipe("pipe.vapor", c.vapor_pipe);

    auto check_valve = [&](const std::string& sec, const ValveSettings& v) {
        require(v.flow_coefficient > 0.0, sec + ".flow_coefficient",
                "must be positive");
        require(v.characteristic == "linear" || v.characteristic == "equal-percentage",
                sec + ".characteristic", "must be linear or equal-percentage");
        require(v.rangeability > 1.0, sec + ".rangeability", "must exceed 1");
    };
    check_valve("valve.throttle", c.throttle_valve);
    check_valve("valve.vapor_return", c.vapor_return_valve);
    check_valve("valve.liquefier", c.liquefier_valve);
    require(c.liquefier_pressure > 0.0, "valve.liquefier.downstream_pressure_pa",
            "must be positive");

    require(c.control.mode == "split-range" || c.control.mode == "fixed-speed",
            "control.mode", "must be split-range or fixed-speed");
    require(c.control.flow_set_point > 0.0, "control.flow_set_point_m3h",
            "must be positive");
    require(c.control.split_point > 0.0 && c.control.split_point < 1.0,
            "control.split_point", "must lie in (0, 1)");
    require(c.control.sample_interval > 0.0, "control.sample_interval_s",
            "must be positive");
    auto check_loop = [&](const std::string& sec, const LoopSettings& l) {
        require(l.plant_gain != 0.0, sec + ".plant_gain", "must be nonzero");
        require(l.plant_tau >= 0.0, sec + ".plant_tau_s", "must be nonnegative");
        require(l.plant_theta >= 0.0, sec + ".plant_theta_s", "must be nonnegative");
        require(l.closed_loop_tc > 0.0, sec + ".closed_loop_tc_s", "must be positive");
        require(l.setpoint_weight >= 0.0 && l.setpoint_weight <= 1.0,
                sec + ".setpoint_weight", "must lie in [0, 1]");
    };
    check_loop("control.flow_loop", c.control.flow_loop);
    check_loop("control.onshore_pressure_loop", c.control.onshore_pressure_loop);
    check_loop("control.seaborne_pressure_loop", c.control.seaborne_pressure_loop);

    require(c.dead_state_temperature > 0.0, "exergy.dead_state_temperature_k",
            "must be positive");

    require(c.ugsa.samples >= 10, "ugsa.samples", "must be at least 10");
    require(c.ugsa.bootstrap_resamples >= 1, "ugsa.bootstrap_resamples",
            "must be at least 1");
    auto check_range = [&](const std::string& key, const UgsaRange& r) {
        require(r.lo < r.hi, key, "needs lo < hi");
    };
    check_range("ugsa.peak_efficiency", c.ugsa.peak_efficiency);
    check_range("ugsa.pipe_heat_w_m", c.ugsa.pipe_heat);
    check_range("ugsa.roughness_m", c.ugsa.roughness);
    check_range("ugsa.flow_set_point_m3h", c.ugsa.flow_set_point);
    check_range("ugsa.bor_onshore_pct_day", c.ugsa.bor_onshore);
    check_range("ugsa.bor_seaborne_pct_day", c.ugsa.bor_seaborne);
    require(c.ugsa.peak_efficiency.lo > 0.0 && c.ugsa.peak_efficiency.hi <= 1.0,
            "ugsa.peak_efficiency", "must stay inside (0, 1]");

    require(c.run.rel_tol > 0.0 && c.run.rel_tol <= 1e-2, "run.rel_tol",
            "must lie in (0, 1e-2]");
    require(c.run.max_step > 0.0, "run.max_step_s", "must be positive");
    require(c.run.time_limit > 0.0, "run.time_limit_s", "must be positive");
    require(c.run.fill_reference_mass > 0.0, "run.fill_reference_mass_kg",
            "must be positive");
    require(c.run.fill_reference_volume > 0.0, "run.fill_reference_volume_m3",
            "must be positive");
    require(!c.run.out_dir.empty(), "run.out_dir", "must not be empty");

    if (!errors.empty()) {
        std::string msg = "config errors:";
        for (const std::string& e : errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
}

}  // namespace lh2::cfg
