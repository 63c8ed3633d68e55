#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hybridsim/world.hpp"

namespace hybridsim {

enum class Algorithm { KMeans, Grid };

Algorithm parse_algorithm(const std::string& name);
const char* algorithm_name(Algorithm a);

// One named scenario: the world recipe plus the billing knobs that belong
// to the scenario rather than to a provider. Partition count is fixed at
// kPartitions (2x2 grid / k-means k=4), matching the evaluated deployments.
inline constexpr int kPartitions = 4;

struct ScenarioSpec {
    std::string name;
    int agents = 0;
    int rescuers = 4;  // also the group count: one rescuer leads each group
    int env_width = 100;
    int env_height = 100;
    int aoi_range = 5;
    std::uint64_t message_size_bytes = 1000;
    std::uint64_t agent_size_bytes = 10000;
    int max_ticks = 2000;
    int spawn_radius = 10;
    std::vector<Coord> exits;  // empty = the four corner cells
    SpawnMode spawn_mode = SpawnMode::CellUniform;
    int cloud_partition_index = kPartitions - 1;
    std::optional<double> t_exec_override_s;
    bool round_up_billing = false;

    ScenarioConfig to_config(std::uint64_t seed) const;
    void validate() const;
};

// config1..config5: 200..1000 agents in steps of 200, 4 rescuers each.
bool is_preset_scenario(const std::string& name);
ScenarioSpec preset_scenario(const std::string& name);
std::vector<std::string> preset_scenario_names();

struct ExperimentSpec {
    std::vector<ScenarioSpec> scenarios;
    std::vector<Algorithm> algorithms;
    std::vector<std::string> providers;
    std::vector<int> mu_values = {0};
    int repetitions = 10;
    std::uint64_t base_seed = 42;
    std::filesystem::path output_dir = "out";

    void validate() const;
};

// Loads an experiment file. Top-level keys: scenarios, algorithms,
// providers, mu_values, repetitions, base_seed, output_dir. A
// '[scenario NAME]' section overrides per-scenario fields (agents,
// rescuers, env_width, env_height, aoi_range, message_size_bytes,
// agent_size_bytes, max_ticks, spawn_radius, exits, spawn_mode,
// cloud_partition_index, t_exec_override_s, round_up_billing); non-preset
// names must at least set agents. Unknown keys are rejected by name.
ExperimentSpec load_config(const std::filesystem::path& path);

}  // namespace hybridsim
