#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "platoon/config.hpp"
#include "platoon/errors.hpp"

using namespace platoon;
using nlohmann::json;

TEST_CASE("defaults describe the reference scenario and validate") {
    ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.n_followers == 10);
    CHECK(*cfg.topology_kind == TopologyKind::BDL);
    CHECK(cfg.spacing == 20.0);
    CHECK(cfg.quantizer.kind == QuantizerKind::Deterministic);
    const SimConfig sim = cfg.make_sim_config();
    CHECK(sim.gains.n_followers() == 10);
}

TEST_CASE("parse: overrides and nested sections") {
    const json doc = {
        {"topology", {{"kind", "PF"}, {"followers", 4}}},
        {"vehicle", {{"inertial_delay", 0.4}}},
        {"gamma", 2.0},
        {"quantizer", {{"kind", "probabilistic"}, {"step", 0.5}}},
        {"head_profile",
         {{"initial_velocity", 15.0},
          {"phases", json::array({{{"until", 3.0}, {"accel", 1.0}}})}}},
        {"spacing", 10.0},
        {"duration", 12.0},
        {"seed", 99},
        {"replicas", 7},
        {"privacy", {{"zeta", 0.25}, {"pairs", 100}}},
        {"attack_target", 2},
    };
    const ScenarioConfig cfg = parse_config(doc);
    CHECK(*cfg.topology_kind == TopologyKind::PF);
    CHECK(cfg.n_followers == 4);
    CHECK(cfg.vehicle.inertial_delay == 0.4);
    CHECK(cfg.gamma == 2.0);
    CHECK(cfg.quantizer.kind == QuantizerKind::Probabilistic);
    CHECK(cfg.quantizer.step == 0.5);
    CHECK(cfg.head.initial_velocity == 15.0);
    CHECK(cfg.head.phases.size() == 1);
    CHECK(cfg.seed == 99);
    CHECK(cfg.replicas == 7);
    CHECK(cfg.privacy_zeta == 0.25);
    CHECK(cfg.attack_target == 2);
}

TEST_CASE("parse: explicit topology") {
    const json doc = {
        {"topology",
         {{"adjacency", json::array({json::array({0, 0}), json::array({1, 0})})},
          {"pinned", json::array({1, 0})}}},
    };
    const ScenarioConfig cfg = parse_config(doc);
    REQUIRE(cfg.explicit_topology.has_value());
    CHECK(cfg.explicit_topology->n_followers == 2);
    CHECK(cfg.explicit_topology->adjacency(1, 0) == 1.0);
    CHECK(cfg.make_topology().pinned == std::vector<int>{1, 0});
}

TEST_CASE("parse: rejection paths") {
    SUBCASE("unknown root key") {
        CHECK_THROWS_AS(parse_config({{"quantiser", {{"kind", "none"}}}}), ConfigError);
    }
    SUBCASE("unknown nested key") {
        CHECK_THROWS_AS(parse_config({{"vehicle", {{"weight", 1500.0}}}}), ConfigError);
    }
    SUBCASE("nonpositive gamma") {
        CHECK_THROWS_AS(parse_config({{"gamma", 0.0}}), ConfigError);
    }
    SUBCASE("bad quantizer kind") {
        CHECK_THROWS_AS(parse_config({{"quantizer", {{"kind", "dither"}}}}), ConfigError);
    }
    SUBCASE("unpinned explicit topology") {
        const json doc = {
            {"topology",
             {{"adjacency", json::array({json::array({0, 0}), json::array({1, 0})})},
              {"pinned", json::array({0, 0})}}},
        };
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SUBCASE("non-increasing profile phases") {
        const json doc = {
            {"head_profile",
             {{"phases", json::array({{{"until", 5.0}, {"accel", 0.0}},
                                      {{"until", 5.0}, {"accel", 2.0}}})}}},
        };
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SUBCASE("malformed perturbation row") {
        const json doc = {{"initial_perturbations", json::array({json::array({1.0, 0.0})})}};
        CHECK_THROWS_AS(parse_config(doc), ConfigError);
    }
    SUBCASE("zeta at or above the quantizer step") {
        CHECK_THROWS_AS(parse_config({{"privacy", {{"zeta", 1.5}}}}), ConfigError);
    }
    SUBCASE("attack target out of range") {
        CHECK_THROWS_AS(parse_config({{"attack_target", 11}}), ConfigError);
    }
}

TEST_CASE("serialize/parse round trip is key-for-key identical") {
    const json doc = {
        {"topology", {{"kind", "TPLF"}, {"followers", 6}}},
        {"quantizer", {{"kind", "probabilistic"}, {"step", 0.75}}},
        {"gamma", 0.5},
        {"seed", 2024},
        {"initial_perturbations",
         json::array({json::array({0.1, 0.0, -0.2}), json::array({0.0, 0.3, 0.0}),
                      json::array({0.2, 0.0, 0.0}), json::array({0.0, 0.0, 0.0}),
                      json::array({-0.1, 0.1, 0.0}), json::array({0.0, -0.2, 0.1})})},
    };

    const ScenarioConfig first = parse_config(doc);
    const json serialized = to_json(first);
    const ScenarioConfig second = parse_config(serialized);
    CHECK(to_json(second) == serialized);
    CHECK(config_hash(first) == config_hash(second));
}

TEST_CASE("config hash tracks semantic changes") {
    ScenarioConfig a;
    ScenarioConfig b;
    CHECK(config_hash(a) == config_hash(b));
    b.seed = a.seed + 1;
    CHECK(config_hash(a) != config_hash(b));
}
