#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cotransport/errors.hpp"
#include "cotransport/sim/config.hpp"

#include <filesystem>
#include <fstream>

using namespace cotransport;
using namespace cotransport::sim;
using nlohmann::json;

namespace {

json minimal() {
    return json::parse(R"({
        "name": "t",
        "controller": "admittance",
        "dt": 0.002,
        "duration": 4.0,
        "seed": 7,
        "object": {"preset": "rigid_rod", "rest_vector": [1, 0, 0]},
        "script": [
            {"type": "hold", "duration": 0.5},
            {"type": "translate", "offset": [0.1, 0, 0], "duration": 1.0}
        ]
    })");
}

std::string message_of(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("a minimal scenario parses") {
    const auto cfg = parse_scenario(minimal());
    CHECK(cfg.name == "t");
    CHECK(cfg.mode == aci::ControllerMode::AdmittanceOnly);
    CHECK(cfg.dt == 0.002);
    CHECK(cfg.seed == 7);
    CHECK(cfg.object.label == "rigid_rod");
    CHECK(cfg.script.size() == 2);
    REQUIRE(cfg.waypoints.offsets.size() == 1);
    CHECK(cfg.waypoints.offsets[0].isApprox(Eigen::Vector3d(0.1, 0, 0)));
    CHECK(cfg.wbc.q_default == cfg.q_initial);
    CHECK_FALSE(cfg.out_trace.has_value());
}

TEST_CASE("rest vector is converted from world to the ee frame") {
    const auto cfg = parse_scenario(minimal());
    const Pose ee = forward_kinematics(cfg.model, cfg.q_initial);
    CHECK((ee.orientation * cfg.object.rest_vector - Eigen::Vector3d(1, 0, 0)).norm() < 1e-12);
    json doc = minimal();
    doc["object"].erase("rest_vector");
    CHECK(parse_scenario(doc).object.rest_vector == objects::rigid_rod().rest_vector);
}

TEST_CASE("overrides and broadcasting") {
    json doc = minimal();
    doc["wbc"] = {{"W2", 5.0}, {"K", {2, 2, 2, 0.5, 0.5, 0.5}}, {"velocity_limits", {{"arm", 2.0}}}};
    doc["aci"] = {{"window_length", 0.5}, {"latching", false}};
    doc["object"]["vertical_stiffness"] = 60.0;
    doc["metrics"] = {{"intervals", {0.0, 1.0, 2.0}}};
    doc["waypoints"] = {{"points", json::array({{0, 0.1, 0}, {0, 0, 0}})}, {"tolerance", 0.01}};
    const auto cfg = parse_scenario(doc);
    CHECK(cfg.wbc.damping_weight == Eigen::VectorXd::Constant(9, 5.0));
    CHECK(cfg.wbc.gain(3) == 0.5);
    CHECK(cfg.wbc.velocity_limit(8) == 2.0);
    CHECK(cfg.wbc.velocity_limit(0) == 1.0);
    CHECK(cfg.aci.index.window_length == 0.5);
    CHECK_FALSE(cfg.aci.intention.latching);
    CHECK(cfg.object.vertical_stiffness == 60.0);
    CHECK(cfg.interval_boundaries.size() == 3);
    CHECK(cfg.waypoints.offsets.size() == 2);
    CHECK(cfg.waypoints.tolerance == 0.01);
}

TEST_CASE("every problem is reported at once") {
    json doc = minimal();
    doc["dt"] = -0.1;
    doc["object"]["lateral_stiffness"] = -5.0;
    doc["controller"] = "autopilot";
    doc["script"][1]["type"] = "teleport";
    const std::string msg = message_of(doc);
    CHECK(msg.find("dt") != std::string::npos);
    CHECK(msg.find("lateral_stiffness") != std::string::npos);
    CHECK(msg.find("autopilot") != std::string::npos);
    CHECK(msg.find("teleport") != std::string::npos);
}

TEST_CASE("single field errors") {
    SUBCASE("unknown preset") {
        json doc = minimal();
        doc["object"]["preset"] = "glass";
        CHECK(message_of(doc).find("unknown preset 'glass'") != std::string::npos);
    }
    SUBCASE("zero dt") {
        json doc = minimal();
        doc["dt"] = 0.0;
        CHECK(message_of(doc).find("dt must be positive") != std::string::npos);
    }
    SUBCASE("wrong type") {
        json doc = minimal();
        doc["duration"] = "long";
        CHECK(message_of(doc).find("duration must be a number") != std::string::npos);
    }
    SUBCASE("wrong vector length") {
        json doc = minimal();
        doc["wbc"] = {{"W1", {1, 2}}};
        CHECK(message_of(doc).find("wbc.W1") != std::string::npos);
    }
    SUBCASE("q_initial length") {
        json doc = minimal();
        doc["robot"] = {{"q_initial", {0, 0, 0}}};
        CHECK(message_of(doc).find("q_initial") != std::string::npos);
    }
    SUBCASE("intervals out of order") {
        json doc = minimal();
        doc["metrics"] = {{"intervals", {0.0, 2.0, 1.0}}};
        CHECK(message_of(doc).find("strictly increasing") != std::string::npos);
        doc["metrics"] = {{"intervals", {0.0, 9.0}}};
        CHECK(message_of(doc).find("within [0, duration]") != std::string::npos);
    }
    SUBCASE("segment without a duration") {
        json doc = minimal();
        doc["script"][0].erase("duration");
        CHECK(message_of(doc).find("script[0].duration is required") != std::string::npos);
    }
    SUBCASE("missing trace file") {
        json doc = minimal();
        doc["human"] = {{"trace", "nowhere.csv"}};
        CHECK(message_of(doc).find("nowhere.csv") != std::string::npos);
    }
    SUBCASE("not an object") {
        CHECK_THROWS_AS(parse_scenario(json::array()), ConfigError);
    }
}

TEST_CASE("custom joint chain") {
    json doc = minimal();
    doc["robot"] = json::parse(R"({
        "joints": [
            {"translation": [0, 0, 0.5], "axis": [0, 0, 1]},
            {"translation": [0.4, 0, 0], "axis": [0, 1, 0]},
            {"translation": [0.4, 0, 0], "axis": [0, 1, 0]},
            {"translation": [0.1, 0, 0], "axis": [1, 0, 0]}
        ],
        "ee_offset": {"translation": [0.3, 0, 0]}
    })");
    doc["object"].erase("rest_vector");
    const auto cfg = parse_scenario(doc);
    CHECK(cfg.model.dofs() == 7);
    CHECK(cfg.q_initial.size() == 7);
    CHECK(cfg.wbc.gain.size() == 6);
    CHECK(cfg.wbc.velocity_limit.size() == 7);
    doc["robot"]["joints"].erase(2);
    doc["robot"]["joints"].erase(2);
    CHECK(message_of(doc).find("dofs must exceed 6") != std::string::npos);
}

TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "cotransport_test_config";
    std::filesystem::create_directories(dir);
    SUBCASE("missing file") {
        try {
            load_scenario(dir / "absent.json");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("absent.json") != std::string::npos);
        }
    }
    SUBCASE("invalid json") {
        std::ofstream(dir / "broken.json") << "{\"dt\": ";
        try {
            load_scenario(dir / "broken.json");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("invalid JSON") != std::string::npos);
        }
    }
    SUBCASE("relative outputs resolve against the scenario directory") {
        json doc = minimal();
        doc["outputs"] = {{"trace", "out/t.csv"}, {"metrics", "m.json"}};
        std::ofstream(dir / "rel.json") << doc.dump();
        const auto cfg = load_scenario(dir / "rel.json");
        CHECK(*cfg.out_trace == dir / "out/t.csv");
        CHECK(*cfg.out_metrics == dir / "m.json");
    }
}

TEST_CASE("shipped scenarios load") {
    const std::filesystem::path dir = COTRANSPORT_SCENARIOS;
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_scenario(entry.path()));
        ++count;
    }
    CHECK(count >= 5);
}
