// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <string>

#include "bdris/config.hpp"
#include "bdris/types.hpp"

using namespace bdris;

namespace {

std::string message_of(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("empty document and empty path both yield the reference defaults") {
    const SimConfig from_text = parse_config_text("{}");
    const SimConfig from_path = load_config("");
    CHECK(from_text.geometry.m_x == 10);
    CHECK(from_text.geometry.m_y == 10);
    CHECK(from_text.geometry.carrier_hz == doctest::Approx(28e9));
    CHECK(from_text.channel.distance_m == doctest::Approx(20.0));
    CHECK(from_text.channel.clusters == 8);
    CHECK(from_text.channel.paths_per_cluster == 10);
    CHECK(from_text.channel.scenario == "los");
    CHECK(from_text.precoder.csi_case == 1);
    CHECK(from_text.ris.group_count == 1);
    CHECK(from_text.eval.power_dbm == doctest::Approx(20.0));
    CHECK(from_text.eval.trials == 10000);
    CHECK(from_text.eval.seed == 1);
    CHECK(config_to_json(from_text) == config_to_json(from_path));
}

TEST_CASE("noise power derives from the density and bandwidth") {
    const SimConfig cfg = parse_config_text("{}");
    CHECK(cfg.eval.noise_power_dbm() == doctest::Approx(-94.0).epsilon(1e-12));
    CHECK(cfg.eval.noise_power_mw() == doctest::Approx(db2lin(-94.0)).epsilon(1e-12));
}

TEST_CASE("parsed fields land in their sections") {
    const SimConfig cfg = parse_config_text(R"({
        "geometry": {"m_x": 4, "m_y": 6, "separation_wavelengths": 1.5},
        "channel": {"scenario": "blocked", "clusters": 3},
        "precoder": {"csi_case": 2},
        "ris": {"grouping": "mirror", "group_count": 4},
        "eval": {"trials": 123, "seed": 99, "sweep_axis": "separation"}
    })");
    CHECK(cfg.geometry.m_x == 4);
    CHECK(cfg.geometry.m_y == 6);
    CHECK(cfg.geometry.separation_wavelengths == doctest::Approx(1.5));
    CHECK(cfg.channel.scenario == "blocked");
    CHECK(cfg.channel.scenario_enum() == Scenario::LosBlocked);
    CHECK(cfg.channel.clusters == 3);
    CHECK(cfg.precoder.mode() == CsiMode::CodebookFeedback);
    CHECK(cfg.ris.strategy() == GroupingStrategy::MirrorSymmetric);
    CHECK(cfg.ris.group_count == 4);
    CHECK(cfg.eval.trials == 123);
    CHECK(cfg.eval.seed == 99);
    CHECK(cfg.eval.sweep_axis == "separation");
}

TEST_CASE("violations across sections are reported together") {
    const std::string msg = message_of(R"({
        "geometry": {"m_x": 0},
        "eval": {"trials": 0},
        "channel": {"scenario": "tunnel"}
    })");
    CHECK(msg.find("geometry.m_x") != std::string::npos);
    CHECK(msg.find("eval.trials") != std::string::npos);
    CHECK(msg.find("channel.scenario") != std::string::npos);
}

TEST_CASE("unknown sections and fields are rejected by name") {
    CHECK(message_of(R"({"evil": {}})").find("evil: unknown section") != std::string::npos);
    CHECK(message_of(R"({"geometry": {"bogus": 1}})").find("bogus") != std::string::npos);
    CHECK(message_of("[1, 2]").find("object") != std::string::npos);
    CHECK(message_of("{not json").find("not valid JSON") != std::string::npos);
}

TEST_CASE("group count must tile the configured array") {
    const std::string msg = message_of(R"({"ris": {"group_count": 7}})");
    CHECK(msg.find("ris.group_count") != std::string::npos);
    CHECK(msg.find("divide") != std::string::npos);
    // A compatible divisor passes.
    CHECK_NOTHROW(parse_config_text(R"({"ris": {"group_count": 20}})"));
}

TEST_CASE("constellation order must be a power of two") {
    const std::string msg = message_of(R"({"eval": {"constellation_order": 6}})");
    CHECK(msg.find("constellation_order") != std::string::npos);
    CHECK_NOTHROW(parse_config_text(R"({"eval": {"constellation_order": 8}})"));
}

TEST_CASE("canonical echo round-trips exactly") {
    const SimConfig cfg = parse_config_text(R"({
        "geometry": {"m_x": 6, "m_y": 6},
        "ris": {"grouping": "rows", "group_count": 6},
        "eval": {"power_grid_dbm": [0, 10, 20], "sweep_sizes": [2, 6]}
    })");
    const std::string echo = config_to_json(cfg);
    const SimConfig reparsed = parse_config_text(echo);
    CHECK(config_to_json(reparsed) == echo);
}

TEST_CASE("link setup assembles the configured pieces") {
    SimConfig cfg = parse_config_text(R"({
        "geometry": {"m_x": 4, "m_y": 4},
        "precoder": {"csi_case": 2, "codebook_azimuth_steps": 8, "codebook_elevation_steps": 4},
        "ris": {"group_count": 4}
    })");
    const LinkSetup setup = cfg.make_link_setup();
    CHECK(setup.geo.size() == 16);
    CHECK(setup.g.size() == 16);
    CHECK(setup.csi == CsiMode::CodebookFeedback);
    CHECK(setup.codebook.size() == 9 * 5);
    CHECK(setup.grouping.group_count == 4);

    cfg.precoder.csi_case = 1;
    const LinkSetup full = cfg.make_link_setup();
    CHECK(full.codebook.size() == 0);
}

TEST_CASE("wavelength follows the carrier") {
    const SimConfig cfg = parse_config_text(R"({"geometry": {"carrier_hz": 28e9}})");
    CHECK(cfg.geometry.wavelength() == doctest::Approx(299792458.0 / 28e9).epsilon(1e-12));
    const ArrayGeometry geo = cfg.geometry.build();
    CHECK(geo.dx == doctest::Approx(cfg.geometry.wavelength() / 2.0).epsilon(1e-12));
    CHECK(geo.cell_area ==
          doctest::Approx(0.25 * cfg.geometry.wavelength() * cfg.geometry.wavelength()).epsilon(1e-12));
}
