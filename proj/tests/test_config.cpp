#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "hybridsim/config.hpp"

using namespace hybridsim;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_CASE("algorithm names round trip") {
    CHECK(parse_algorithm("kmeans") == Algorithm::KMeans);
    CHECK(parse_algorithm("grid") == Algorithm::Grid);
    CHECK(std::string(algorithm_name(Algorithm::KMeans)) == "kmeans");
    CHECK(std::string(algorithm_name(Algorithm::Grid)) == "grid");
    CHECK_THROWS_AS(parse_algorithm("voronoi"), std::invalid_argument);
}

TEST_CASE("the five preset scenarios scale agents in steps of 200") {
    CHECK(preset_scenario_names() ==
          std::vector<std::string>{"config1", "config2", "config3", "config4", "config5"});
    int expected = 200;
    for (const std::string& name : preset_scenario_names()) {
        CHECK(is_preset_scenario(name));
        ScenarioSpec s = preset_scenario(name);
        CHECK(s.name == name);
        CHECK(s.agents == expected);
        CHECK(s.rescuers == 4);
        CHECK(s.env_width == 100);
        CHECK(s.env_height == 100);
        CHECK(s.aoi_range == 5);
        CHECK(s.message_size_bytes == 1000);
        CHECK(s.agent_size_bytes == 10000);
        expected += 200;
    }
    CHECK(!is_preset_scenario("config6"));
    CHECK(!is_preset_scenario("config0"));
    CHECK(!is_preset_scenario("anything"));
    CHECK_THROWS_AS(preset_scenario("config9"), std::invalid_argument);
}

TEST_CASE("a scenario spec expands to a world config") {
    ScenarioSpec s = preset_scenario("config2");
    ScenarioConfig c = s.to_config(123);
    CHECK(c.total_agents == 400);
    CHECK(c.rescuer_count == 4);
    CHECK(c.group_count == 4);
    CHECK(c.params.seed == 123);
    CHECK(c.env.exits.size() == 4);  // corner default
    CHECK(c.env.exits[3] == Coord{99, 99});
    CHECK(c.spawn_mode == SpawnMode::CellUniform);
}

TEST_CASE("a minimal experiment file fills in the documented defaults") {
    std::filesystem::path path = write_temp("hybridsim_cfg_minimal.ini",
                                            "scenarios = config1\n"
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n");
    ExperimentSpec spec = load_config(path);
    CHECK(spec.scenarios.size() == 1);
    CHECK(spec.scenarios[0].name == "config1");
    CHECK(spec.scenarios[0].agents == 200);
    CHECK(spec.mu_values == std::vector<int>{0});
    CHECK(spec.repetitions == 10);
    CHECK(spec.base_seed == 42);
    CHECK(spec.output_dir == std::filesystem::path("out"));
    std::filesystem::remove(path);
}

TEST_CASE("experiment files parse lists and scenario overrides") {
    std::filesystem::path path = write_temp(
        "hybridsim_cfg_full.ini",
        "# full matrix\n"
        "scenarios = config1, tiny\n"
        "algorithms = kmeans, grid\n"
        "providers = ec2, azure\n"
        "mu_values = 0, 1\n"
        "repetitions = 3\n"
        "base_seed = 7\n"
        "output_dir = results\n"
        "\n"
        "[scenario tiny]\n"
        "agents = 40\n"
        "rescuers = 4\n"
        "env_width = 60\n"
        "env_height = 60\n"
        "aoi_range = 3\n"
        "spawn_radius = 5\n"
        "max_ticks = 500\n"
        "spawn_mode = centered\n"
        "exits = 0,0; 59,59\n"
        "cloud_partition_index = 2\n"
        "t_exec_override_s = 3600\n"
        "round_up_billing = true\n"
        "\n"
        "[scenario config1]\n"
        "t_exec_override_s = 1800\n");
    ExperimentSpec spec = load_config(path);
    REQUIRE(spec.scenarios.size() == 2);
    CHECK(spec.algorithms ==
          std::vector<Algorithm>{Algorithm::KMeans, Algorithm::Grid});
    CHECK(spec.providers == std::vector<std::string>{"ec2", "azure"});
    CHECK(spec.mu_values == std::vector<int>{0, 1});
    CHECK(spec.repetitions == 3);
    CHECK(spec.base_seed == 7);
    CHECK(spec.output_dir == std::filesystem::path("results"));

    const ScenarioSpec& preset = spec.scenarios[0];
    CHECK(preset.agents == 200);  // preset value kept
    REQUIRE(preset.t_exec_override_s.has_value());
    CHECK(*preset.t_exec_override_s == doctest::Approx(1800.0));

    const ScenarioSpec& tiny = spec.scenarios[1];
    CHECK(tiny.name == "tiny");
    CHECK(tiny.agents == 40);
    CHECK(tiny.env_width == 60);
    CHECK(tiny.aoi_range == 3);
    CHECK(tiny.spawn_mode == SpawnMode::CellCenter);
    REQUIRE(tiny.exits.size() == 2);
    CHECK(tiny.exits[0] == Coord{0, 0});
    CHECK(tiny.exits[1] == Coord{59, 59});
    CHECK(tiny.cloud_partition_index == 2);
    CHECK(tiny.round_up_billing);
    std::filesystem::remove(path);
}

TEST_CASE("unknown keys are rejected with their name and location") {
    std::filesystem::path path = write_temp("hybridsim_cfg_badkey.ini",
                                            "scenarios = config1\n"
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n"
                                            "colour = blue\n");
    try {
        load_config(path);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("colour") != std::string::npos);
        CHECK(msg.find(":4") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("unknown scenario keys are rejected too") {
    std::filesystem::path path = write_temp("hybridsim_cfg_badscen.ini",
                                            "scenarios = config1\n"
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n"
                                            "[scenario config1]\n"
                                            "walk_speed = 2\n");
    CHECK_THROWS_WITH_AS(load_config(path),
                         doctest::Contains("unknown scenario key 'walk_speed'"),
                         std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("non-preset scenarios must define their agent count") {
    std::filesystem::path path = write_temp("hybridsim_cfg_noagents.ini",
                                            "scenarios = mystery\n"
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("does not set 'agents'"),
                         std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("scenario sections without a matching scenario are rejected") {
    std::filesystem::path path = write_temp("hybridsim_cfg_orphan.ini",
                                            "scenarios = config1\n"
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n"
                                            "[scenario ghost]\n"
                                            "agents = 10\n");
    CHECK_THROWS_AS(load_config(path), std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("mu values outside zero and one are rejected") {
    std::filesystem::path path = write_temp("hybridsim_cfg_badmu.ini",
                                            "scenarios = config1\n"
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n"
                                            "mu_values = 0, 2\n");
    CHECK_THROWS_WITH_AS(load_config(path), "mu values must be 0 or 1", std::invalid_argument);
    std::filesystem::remove(path);
}

TEST_CASE("missing required keys are named") {
    std::filesystem::path path = write_temp("hybridsim_cfg_miss.ini",
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("scenarios"),
                         std::runtime_error);
    std::filesystem::remove(path);
}

TEST_CASE("duplicate scenario names are rejected") {
    std::filesystem::path path = write_temp("hybridsim_cfg_dup.ini",
                                            "scenarios = config1, config1\n"
                                            "algorithms = kmeans\n"
                                            "providers = ec2\n");
    CHECK_THROWS_WITH_AS(load_config(path), "duplicate scenario 'config1'",
                         std::invalid_argument);
    std::filesystem::remove(path);
}
