#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "helpers.hpp"
#include "pwmlab/config.hpp"
#include "pwmlab/error.hpp"

using namespace pwmlab;
using testutil::kPi;

TEST_SUITE("config") {

TEST_CASE("strategy names round-trip") {
    for (Strategy s : {Strategy::spwm1, Strategy::spwm2, Strategy::spwm3,
                       Strategy::hipwm_fmtct})
        CHECK(strategy_from_name(strategy_name(s)) == s);
    CHECK_THROWS_WITH_AS(strategy_from_name("SPWM4"), doctest::Contains("SPWM4"), Error);
}

TEST_CASE("defaults validate for every strategy") {
    for (Strategy s : {Strategy::spwm1, Strategy::spwm2, Strategy::spwm3,
                       Strategy::hipwm_fmtct}) {
        const auto c = default_config(s);
        CHECK_NOTHROW(validate(c));
        CHECK(c.topology.vdc_per_cell == 150.0);
        CHECK(c.carrier.cells == 2);
        CHECK(switching_frequency_hz(c) == 750.0);
        CHECK(c.sample_rate_hz() == 50.0 * static_cast<double>(std::size_t{1} << 18));
    }
    CHECK(default_config(Strategy::spwm1).modulating.injection.empty());
    CHECK(default_config(Strategy::spwm2).modulating.injection.empty());
    CHECK(!default_config(Strategy::spwm3).modulating.injection.empty());
    CHECK(!default_config(Strategy::hipwm_fmtct).modulating.injection.empty());
}

TEST_CASE("minimal document inherits the defaults") {
    const auto c = parse_config_text(R"({"strategy": "SPWM2"})");
    CHECK(c.strategy == Strategy::spwm2);
    CHECK(c.carrier.kind == CarrierSpec::Kind::phase_shifted_set);
    CHECK(c.carrier.order_m == 15.0);
    CHECK(c.modulating.amplitude_index == 0.9);
    CHECK(c.sampling.samples_per_period == (std::size_t{1} << 18));
    CHECK(!c.target_fundamental_rms_v.has_value());
}

TEST_CASE("full document round-trips") {
    auto c = default_config(Strategy::hipwm_fmtct);
    c.modulating.amplitude_index = 0.77;
    c.modulating.phase_rad = kPi / 2.0;
    c.carrier.fmtct = make_fmtct_params(0.35, 9.0, 50.0);
    c.carrier.order_m = 9.0;
    c.sampling.samples_per_period = 8192;
    c.sampling.periods = 2;
    c.topology.dead_time_s = 2e-6;
    c.target_fundamental_rms_v = 220.0;

    const auto back = parse_config_text(config_text(c));
    CHECK(back.strategy == c.strategy);
    CHECK(back.modulating.amplitude_index == 0.77);
    CHECK(back.modulating.phase_rad == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(back.modulating.injection == c.modulating.injection);
    CHECK(back.carrier.fmtct.k_trunc == 0.35);
    CHECK(back.carrier.fmtct.m_bar == 9.0);
    CHECK(back.carrier.fmtct.a_m == doctest::Approx(c.carrier.fmtct.a_m).epsilon(1e-12));
    CHECK(back.sampling.samples_per_period == 8192);
    CHECK(back.sampling.periods == 2);
    CHECK(back.topology.dead_time_s == 2e-6);
    REQUIRE(back.target_fundamental_rms_v.has_value());
    CHECK(*back.target_fundamental_rms_v == 220.0);

    // Serialization is stable: a second trip produces identical text.
    CHECK(config_text(back) == config_text(c));
}

TEST_CASE("file round-trip") {
    auto c = default_config(Strategy::spwm3);
    c.carrier.phase_offsets_deg = {90.0, 180.0};
    const char* path = "config_roundtrip_test.json";
    save_config(c, path);
    const auto back = load_config(path);
    std::remove(path);
    CHECK(back.carrier.phase_offsets_deg == c.carrier.phase_offsets_deg);
    CHECK(back.strategy == Strategy::spwm3);
    CHECK_THROWS_WITH_AS(load_config("does_not_exist.json"), doctest::Contains("open"),
                         Error);
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"strategy": "SPWM2", "extra": 1})"),
                         doctest::Contains("extra"), Error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"strategy": "SPWM2", "modulating": {"freq": 60}})"),
                    Error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"strategy": "SPWM2", "carrier": {"bands": 4}})"),
                    Error);
    CHECK_THROWS_AS(parse_config_text(R"({"modulating": {}})"), Error); // no strategy
    CHECK_THROWS_AS(parse_config_text("not json"), Error);
}

TEST_CASE("strategy-specific field rules") {
    // Truncation parameters belong to the frequency-modulated strategy only.
    CHECK_THROWS_WITH_AS(
        parse_config_text(R"({"strategy": "SPWM1", "carrier": {"k_trunc": 0.5}})"),
        doctest::Contains("HIPWM_FMTCT"), Error);
    // Injection cannot be emptied for the injecting strategies.
    CHECK_THROWS_AS(
        parse_config_text(R"({"strategy": "SPWM3", "modulating": {"injection": []}})"),
        Error);
    CHECK_NOTHROW(
        parse_config_text(R"({"strategy": "SPWM2", "modulating": {"injection": []}})"));
    // Injection entries are [order, amplitude] pairs of an odd order.
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"strategy": "SPWM3", "modulating": {"injection": [[4, 0.1]]}})"),
        Error);
    CHECK_THROWS_AS(
        parse_config_text(
            R"({"strategy": "SPWM3", "modulating": {"injection": [[3]]}})"),
        Error);
    // The carrier law follows a changed fundamental.
    const auto c = parse_config_text(
        R"({"strategy": "HIPWM_FMTCT", "modulating": {"fundamental_hz": 60}})");
    CHECK(c.carrier.fmtct.fundamental_hz() == doctest::Approx(60.0).epsilon(1e-12));
    // Mean order must stay an odd multiple of three.
    CHECK_THROWS_AS(parse_config_text(
                        R"({"strategy": "HIPWM_FMTCT", "carrier": {"m_bar": 12}})"),
                    Error);
}

TEST_CASE("cross-field validation") {
    auto c = default_config(Strategy::spwm2);
    c.carrier.kind = CarrierSpec::Kind::level_shifted_set;
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("carrier kind"), Error);

    c = default_config(Strategy::spwm2);
    c.topology.cells_per_phase = 3;
    CHECK_THROWS_AS(validate(c), Error);
    CHECK_THROWS_AS(parse_config_text(
                        R"({"strategy": "SPWM2", "carrier": {"cells": 3}})"),
                    Error);

    c = default_config(Strategy::spwm2);
    c.sampling.samples_per_period = 100;
    CHECK_THROWS_AS(validate(c), Error);
    c.sampling.samples_per_period = 32;
    CHECK_THROWS_AS(validate(c), Error);
    c = default_config(Strategy::spwm2);
    c.sampling.periods = 0;
    CHECK_THROWS_AS(validate(c), Error);

    c = default_config(Strategy::spwm2);
    c.target_fundamental_rms_v = -5.0;
    CHECK_THROWS_AS(validate(c), Error);
    CHECK_NOTHROW(parse_config_text(
        R"({"strategy": "SPWM2", "target_fundamental_rms_v": null})"));
}

TEST_CASE("phase is configured in degrees") {
    const auto c = parse_config_text(
        R"({"strategy": "SPWM2", "modulating": {"phase_deg": 90}})");
    CHECK(c.modulating.phase_rad == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

} // TEST_SUITE
