#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include "lh2/config.hpp"

using namespace lh2;

namespace {

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("defaults validate and hash deterministically") {
    cfg::ScenarioConfig c = cfg::default_config();
    CHECK_NOTHROW(cfg::validate_config(c));
    CHECK(cfg::config_hash(c) == cfg::config_hash(cfg::default_config()));

    std::string text = cfg::serialize_config(c);
    CHECK(text.find("[tank.onshore]") != std::string::npos);
    CHECK(text.find("volume_m3 = 50000") != std::string::npos);
    CHECK(text.find("mode = \"split-range\"") != std::string::npos);
}

TEST_CASE("serialized form reloads bit-identically") {
    cfg::ScenarioConfig c = cfg::default_config();
    c.control.flow_set_point = 2987.654321;
    c.run.rel_tol = 3.14159e-7;
    c.ugsa.seed = 987654321012345ull;
    std::string text = cfg::serialize_config(c);
    cfg::ScenarioConfig back = cfg::load_config(text, {});
    CHECK(cfg::serialize_config(back) == text);
    CHECK(cfg::config_hash(back) == cfg::config_hash(c));
}

TEST_CASE("file text parses sections, comments, strings and arrays") {
    const std::string text =
        "# pipeline study\n"
        "[tank.onshore]\n"
        "volume_m3 = 52000.0   # slightly larger shell\n"
        "initial_fill_fraction = 0.88\n"
        "\n"
        "[control]\n"
        "mode = \"fixed-speed\"\n"
        "[ugsa]\n"
        "pipe_heat_w_m = [6.0, 11.0]\n"
        "seed = 42\n";
    cfg::ScenarioConfig c = cfg::load_config(text, {});
    CHECK(c.onshore.volume == 52000.0);
    CHECK(c.onshore.initial_fill == 0.88);
    CHECK(c.control.mode == "fixed-speed");
    CHECK(c.ugsa.pipe_heat.lo == 6.0);
    CHECK(c.ugsa.pipe_heat.hi == 11.0);
    CHECK(c.ugsa.seed == 42);
    CHECK(c.seaborne.volume == 45000.0);
}

TEST_CASE("overrides apply after file text and accept bare strings") {
    const std::string text = "[control]\nflow_set_point_m3h = 3000\n";
    cfg::ScenarioConfig c = cfg::load_config(
        text, {"control.flow_set_point_m3h=3585", "control.mode=fixed-speed",
               "ugsa.roughness_m=[5e-5, 1.2e-4]"});
    CHECK(c.control.flow_set_point == 3585.0);
    CHECK(c.control.mode == "fixed-speed");
    CHECK(c.ugsa.roughness.lo == 5e-5);
    CHECK(c.ugsa.roughness.hi == 1.2e-4);

    CHECK_THROWS_AS(cfg::load_config("", {"no_equals_sign"}), std::invalid_argument);
    CHECK_THROWS_AS(cfg::load_config("", {"plainkey=1"}), std::invalid_argument);
}

TEST_CASE("unknown keys are reported by name") {
    std::string msg = message_of(
        [] { cfg::load_config("[tank.onshore]\nvolume_typo_m3 = 1.0\n", {}); });
    CHECK(msg.find("tank.onshore.volume_typo_m3") != std::string::npos);
    CHECK(msg.find("unknown key") != std::string::npos);
}

TEST_CASE("validation failures name the offending field") {
    std::string msg = message_of([] {
        cfg::load_config("", {"tank.seaborne.volume_m3=-5"});
    });
    CHECK(msg.find("tank.seaborne.volume_m3") != std::string::npos);

    msg = message_of([] { cfg::load_config("", {"control.mode=manual"}); });
    CHECK(msg.find("control.mode") != std::string::npos);

    msg = message_of([] { cfg::load_config("", {"ugsa.pipe_heat_w_m=[12.0, 5.5]"}); });
    CHECK(msg.find("ugsa.pipe_heat_w_m") != std::string::npos);
    CHECK(msg.find("lo < hi") != std::string::npos);

    msg = message_of([] { cfg::load_config("", {"pump.shutoff_head_ratio=0.9"}); });
    CHECK(msg.find("pump.shutoff_head_ratio") != std::string::npos);
}

TEST_CASE("malformed lines raise parse errors with line numbers") {
    CHECK_THROWS_WITH_AS(cfg::load_config("[tank.onshore\nvolume_m3 = 1\n", {}),
                         doctest::Contains("line 1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(cfg::load_config("[run]\nout_dir\n", {}),
                         doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(cfg::load_config("orphan = 1\n", {}),
                         doctest::Contains("outside a section"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        cfg::load_config("[run]\nrel_tol = 1e-6\nrel_tol = 1e-7\n", {}),
        doctest::Contains("duplicate"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(cfg::load_config("[run]\nrel_tol = oops\n", {}),
                         doctest::Contains("finite number"), std::invalid_argument);
}

TEST_CASE("valve settings map onto equipment models") {
    cfg::ValveSettings v{0.25, "equal-percentage", 40.0};
    eq::ValveModel m = cfg::make_valve(v);
    CHECK(m.flow_coefficient == 0.25);
    CHECK(m.characteristic == eq::ValveCharacteristic::kEqualPercentage);
    CHECK(m.rangeability == 40.0);

    v.characteristic = "butterfly";
    CHECK_THROWS_AS(cfg::valve_characteristic(v), std::invalid_argument);
}

TEST_CASE("fnv1a 64-bit matches the published test vectors") {
    CHECK(cfg::fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(cfg::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(cfg::fnv1a64("foobar") == 0x85944171f73967e8ull);
}
