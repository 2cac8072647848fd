#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <vector>

#include "lh2/control.hpp"

using namespace lh2::ctl;

namespace {

// first-order-plus-dead-time loop driven by the controller under test
struct LoopResult {
    double overshoot = 0.0;     // peak above set-point, PV units
    double settle_time = -1.0;  // first time the PV enters and stays in 5%
    double final_pv = 0.0;
};

LoopResult run_loop(const PidParams& params, const PlantModel& plant,
                    double sp1, double duration, double dt,
                    double sp0 = 0.0, double sp0_until = 0.0) {
    PidState state;
    const int nbuf = std::max(1, static_cast<int>(std::round(plant.dead_time / dt)));
    std::deque<double> ubuf(nbuf, 0.0);
    double y = 0.0;
    LoopResult r;
    const int n = static_cast<int>(duration / dt);
    for (int i = 0; i < n; ++i) {
        const double now = i * dt;
        const double sp = now < sp0_until ? sp0 : sp1;
        const double u = pid_step(state, params, sp, y, dt);
        ubuf.push_back(u);
        const double u_delayed = ubuf.front();
        ubuf.pop_front();
        y += dt * (plant.gain * u_delayed - y) / plant.time_constant;
        if (now >= sp0_until) {
            r.overshoot = std::max(r.overshoot, y - sp1);
            if (std::fabs(y - sp1) <= 0.05 * std::fabs(sp1)) {
                if (r.settle_time < 0.0) r.settle_time = now - sp0_until;
            } else {
                r.settle_time = -1.0;
            }
        }
    }
    r.final_pv = y;
    return r;
}

}  // namespace

TEST_CASE("SIMC tuning rules") {
    const PidParams a = simc_tune({1.0, 10.0, 1.0}, 1.0);
    CHECK(a.gain == doctest::Approx(5.0));
    CHECK(a.integral_time == doctest::Approx(8.0));
    CHECK(a.derivative_time == 0.0);

    const PidParams b = simc_tune({2.0, 20.0, 2.0}, 2.0);
    CHECK(b.gain == doctest::Approx(2.5));
    CHECK(b.integral_time == doctest::Approx(16.0));

    // short lag picks the time-constant branch of the min
    const PidParams c = simc_tune({1.0, 2.0, 1.0}, 1.0);
    CHECK(c.integral_time == doctest::Approx(2.0));

    CHECK_THROWS_AS(simc_tune({0.0, 10.0, 1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(simc_tune({1.0, -1.0, 1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(simc_tune({1.0, 10.0, 1.0}, 0.0), std::invalid_argument);
    try {
        simc_tune({0.0, 10.0, 1.0}, 1.0);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("gain") != std::string::npos);
    }
}

TEST_CASE("pid holds steady at zero error") {
    PidParams p;
    p.gain = 3.0;
    p.integral_time = 12.0;
    PidState s;
    pid_initialize(s, p, 2.0, 2.0, 0.37);
    for (int i = 0; i < 50; ++i)
        CHECK(pid_step(s, p, 2.0, 2.0, 1.0) == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("persistent error drives the output monotonically into the clamp") {
    PidParams p;
    p.gain = 0.8;
    p.integral_time = 5.0;
    PidState s;
    pid_initialize(s, p, 0.0, 0.0, 0.2);
    double prev = 0.2;
    for (int i = 0; i < 200; ++i) {
        const double u = pid_step(s, p, 10.0, 0.0, 1.0);
        CHECK(u >= prev);
        prev = u;
    }
    CHECK(prev == 1.0);
}

TEST_CASE("output respects the clamps for arbitrary inputs") {
    PidParams p;
    p.gain = 4.0;
    p.integral_time = 2.0;
    p.output_low = -0.5;
    p.output_high = 1.5;
    PidState s;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-50.0, 50.0);
    for (int i = 0; i < 5000; ++i) {
        const double u = pid_step(s, p, d(rng), d(rng), 0.25);
        CHECK(u >= -0.5);
        CHECK(u <= 1.5);
    }
}

TEST_CASE("direct and reverse action mirror each other") {
    PidParams rev;
    rev.gain = 2.0;
    rev.integral_time = 8.0;
    rev.output_low = -1.0;
    PidParams dir = rev;
    dir.direction = PidDirection::kDirect;
    PidState s1, s2;
    const double u_rev = pid_step(s1, rev, 1.0, 2.0, 1.0);
    const double u_dir = pid_step(s2, dir, 1.0, 2.0, 1.0);
    CHECK(u_rev == doctest::Approx(-u_dir));
    CHECK(u_dir > 0.0);  // PV above set-point, direct action opens up
}

TEST_CASE("SIMC loop on its design plant settles without overshoot") {
    const PlantModel plant{1.0, 10.0, 1.0};
    PidParams p = simc_tune(plant, plant.dead_time);
    p.output_low = -10.0;
    p.output_high = 10.0;
    const LoopResult r = run_loop(p, plant, 1.0, 90.0, 0.01);
    CHECK(r.overshoot <= 0.05);
    CHECK(r.settle_time > 0.0);
    CHECK(r.settle_time < 45.0);
    CHECK(r.final_pv == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("anti-windup recovery within twice the unsaturated time") {
    const PlantModel plant{1.0, 10.0, 0.5};
    PidParams p = simc_tune(plant, plant.dead_time);
    p.output_low = 0.0;
    p.output_high = 1.0;

    // 300 s pinned against the clamp by an unreachable set-point, then a
    // reachable one
    const LoopResult saturated =
        run_loop(p, plant, 0.5, 500.0, 0.01, 3.0, 300.0);
    const LoopResult baseline = run_loop(p, plant, 0.5, 200.0, 0.01);
    CHECK(baseline.settle_time > 0.0);
    CHECK(saturated.settle_time > 0.0);
    CHECK(saturated.settle_time <= 2.0 * baseline.settle_time);
}

TEST_CASE("split-range mapping") {
    const SplitRangeConfig cfg;
    const SplitRangeOutput at0 = split_range_map(0.0, cfg);
    CHECK(at0.valve_opening == 0.0);
    CHECK(at0.pump_speed == 25.0);

    const SplitRangeOutput mid = split_range_map(0.5, cfg);
    CHECK(mid.valve_opening == 1.0);
    CHECK(mid.pump_speed == 25.0);

    const SplitRangeOutput top = split_range_map(1.0, cfg);
    CHECK(top.valve_opening == 1.0);
    CHECK(top.pump_speed == 60.0);

    CHECK(split_range_map(0.25, cfg).valve_opening == doctest::Approx(0.5));
    CHECK(split_range_map(0.75, cfg).pump_speed == doctest::Approx(42.5));

    // continuity and monotonicity across the split
    const SplitRangeOutput lo = split_range_map(0.5 - 1e-12, cfg);
    const SplitRangeOutput hi = split_range_map(0.5 + 1e-12, cfg);
    CHECK(lo.valve_opening == doctest::Approx(hi.valve_opening).epsilon(1e-9));
    CHECK(lo.pump_speed == doctest::Approx(hi.pump_speed).epsilon(1e-9));
    double prev_v = -1.0, prev_n = 0.0;
    for (double u = 0.0; u <= 1.0; u += 0.01) {
        const SplitRangeOutput o = split_range_map(u, cfg);
        CHECK(o.valve_opening >= prev_v);
        CHECK(o.pump_speed >= prev_n);
        prev_v = o.valve_opening;
        prev_n = o.pump_speed;
    }

    CHECK_THROWS_AS(split_range_map(0.5, {0.0, 25.0, 60.0}),
                    std::invalid_argument);
}

TEST_CASE("fixed speed is the degenerate split range") {
    const SplitRangeConfig fixed{0.5, 60.0, 60.0};
    for (double u = 0.0; u <= 1.0; u += 0.01) {
        const SplitRangeOutput o = split_range_map(u, fixed);
        const double valve_only = u <= 0.5 ? u / 0.5 : 1.0;
        CHECK(o.pump_speed == 60.0);
        CHECK(o.valve_opening == valve_only);
    }
}

TEST_CASE("step identification recovers a synthetic plant") {
    auto synth = [](double k, double tau1, double theta, double du) {
        std::vector<double> t, y;
        for (double tt = 0.0; tt <= 400.0; tt += 0.5) {
            t.push_back(tt);
            const double yy =
                tt <= theta ? 0.0
                            : k * du * (1.0 - std::exp(-(tt - theta) / tau1));
            y.push_back(5.0 + yy);
        }
        return std::pair{t, y};
    };
    {
        auto [t, y] = synth(2.3, 42.0, 7.0, 0.4);
        const PlantModel m = fopdt_fit(t, y, 1.0, 1.4);
        CHECK(m.gain == doctest::Approx(2.3).epsilon(0.02));
        CHECK(m.time_constant == doctest::Approx(42.0).epsilon(0.05));
        CHECK(m.dead_time == doctest::Approx(7.0).epsilon(0.05));
    }
    {
        auto [t, y] = synth(-1.5, 18.0, 2.0, 0.4);
        const PlantModel m = fopdt_fit(t, y, 1.0, 1.4);
        CHECK(m.gain == doctest::Approx(-1.5).epsilon(0.02));
        CHECK(m.time_constant == doctest::Approx(18.0).epsilon(0.05));
    }
    CHECK_THROWS_AS(fopdt_fit({0.0, 1.0}, {0.0, 1.0}, 0.0, 1.0),
                    std::invalid_argument);
    std::vector<double> t(50), y(50, 1.0);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = double(i);
    CHECK_THROWS_AS(fopdt_fit(t, y, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(fopdt_fit(t, y, 1.0, 1.0), std::invalid_argument);
}
