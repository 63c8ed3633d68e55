#include "hybridsim/config.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hybridsim/text.hpp"

namespace hybridsim {

Algorithm parse_algorithm(const std::string& name) {
    if (name == "kmeans") return Algorithm::KMeans;
    if (name == "grid") return Algorithm::Grid;
    throw std::invalid_argument("unknown algorithm '" + name + "' (known: kmeans, grid)");
}

const char* algorithm_name(Algorithm a) { return a == Algorithm::KMeans ? "kmeans" : "grid"; }

ScenarioConfig ScenarioSpec::to_config(std::uint64_t seed) const {
    ScenarioConfig cfg;
    cfg.total_agents = agents;
    cfg.rescuer_count = rescuers;
    cfg.group_count = rescuers;
    cfg.env.width = env_width;
    cfg.env.height = env_height;
    cfg.env.exits = exits.empty() ? corner_exits(env_width, env_height) : exits;
    cfg.params.aoi_range = aoi_range;
    cfg.params.message_size_bytes = message_size_bytes;
    cfg.params.agent_size_bytes = agent_size_bytes;
    cfg.params.max_ticks = max_ticks;
    cfg.params.spawn_radius = spawn_radius;
    cfg.params.seed = seed;
    cfg.spawn_mode = spawn_mode;
    return cfg;
}

void ScenarioSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("scenario name must not be empty");
    to_config(0).validate();
    if (cloud_partition_index < 0 || cloud_partition_index >= kPartitions) {
        throw std::invalid_argument("scenario '" + name + "': cloud_partition_index out of range");
    }
    if (t_exec_override_s && *t_exec_override_s <= 0) {
        throw std::invalid_argument("scenario '" + name + "': t_exec_override_s must be positive");
    }
}

bool is_preset_scenario(const std::string& name) {
    return name.size() == 7 && name.rfind("config", 0) == 0 && name[6] >= '1' && name[6] <= '5';
}

ScenarioSpec preset_scenario(const std::string& name) {
    if (!is_preset_scenario(name)) {
        throw std::invalid_argument("unknown scenario preset '" + name +
                                    "' (known: config1..config5)");
    }
    ScenarioSpec spec;
    spec.name = name;
    spec.agents = 200 * (name[6] - '0');
    return spec;
}

std::vector<std::string> preset_scenario_names() {
    return {"config1", "config2", "config3", "config4", "config5"};
}

void ExperimentSpec::validate() const {
    if (scenarios.empty()) throw std::invalid_argument("experiment needs at least one scenario");
    if (algorithms.empty()) throw std::invalid_argument("experiment needs at least one algorithm");
    if (providers.empty()) throw std::invalid_argument("experiment needs at least one provider");
    if (mu_values.empty()) throw std::invalid_argument("experiment needs at least one mu value");
    for (int mu : mu_values) {
        if (mu != 0 && mu != 1) throw std::invalid_argument("mu values must be 0 or 1");
    }
    if (repetitions <= 0) throw std::invalid_argument("repetitions must be positive");
    std::set<std::string> names;
    for (const ScenarioSpec& s : scenarios) {
        s.validate();
        if (!names.insert(s.name).second) {
            throw std::invalid_argument("duplicate scenario '" + s.name + "'");
        }
    }
}

namespace {

std::vector<Coord> parse_exits(const std::string& value, const std::string& key) {
    std::vector<Coord> exits;
    for (const std::string& pair : split_list(value, ';')) {
        std::vector<std::string> xy = split_list(pair, ',');
        if (xy.size() != 2) {
            throw std::runtime_error("key '" + key + "': expected 'x,y; x,y; ...' but got '" +
                                     value + "'");
        }
        exits.push_back({static_cast<int>(parse_int(xy[0], key)),
                         static_cast<int>(parse_int(xy[1], key))});
    }
    return exits;
}

SpawnMode parse_spawn_mode(const std::string& value, const std::string& key) {
    if (value == "centered") return SpawnMode::CellCenter;
    if (value == "scattered") return SpawnMode::CellUniform;
    throw std::runtime_error("key '" + key + "': expected 'centered' or 'scattered'");
}

void apply_scenario_override(ScenarioSpec& spec, const IniEntry& e,
                             const std::filesystem::path& path) {
    const std::string& k = e.key;
    try {
        if (k == "agents") {
            spec.agents = static_cast<int>(parse_int(e.value, k));
        } else if (k == "rescuers") {
            spec.rescuers = static_cast<int>(parse_int(e.value, k));
        } else if (k == "env_width") {
            spec.env_width = static_cast<int>(parse_int(e.value, k));
        } else if (k == "env_height") {
            spec.env_height = static_cast<int>(parse_int(e.value, k));
        } else if (k == "aoi_range") {
            spec.aoi_range = static_cast<int>(parse_int(e.value, k));
        } else if (k == "message_size_bytes") {
            spec.message_size_bytes = static_cast<std::uint64_t>(parse_int(e.value, k));
        } else if (k == "agent_size_bytes") {
            spec.agent_size_bytes = static_cast<std::uint64_t>(parse_int(e.value, k));
        } else if (k == "max_ticks") {
            spec.max_ticks = static_cast<int>(parse_int(e.value, k));
        } else if (k == "spawn_radius") {
            spec.spawn_radius = static_cast<int>(parse_int(e.value, k));
        } else if (k == "exits") {
            spec.exits = parse_exits(e.value, k);
        } else if (k == "spawn_mode") {
            spec.spawn_mode = parse_spawn_mode(e.value, k);
        } else if (k == "cloud_partition_index") {
            spec.cloud_partition_index = static_cast<int>(parse_int(e.value, k));
        } else if (k == "t_exec_override_s") {
            spec.t_exec_override_s = parse_double(e.value, k);
        } else if (k == "round_up_billing") {
            spec.round_up_billing = parse_bool(e.value, k);
        } else {
            throw std::runtime_error("unknown scenario key '" + k + "'");
        }
    } catch (const std::runtime_error& err) {
        throw std::runtime_error(path.string() + ":" + std::to_string(e.line) + ": " + err.what());
    }
}

}  // namespace

ExperimentSpec load_config(const std::filesystem::path& path) {
    std::vector<IniSection> sections = parse_ini(path);

    ExperimentSpec spec;
    std::vector<std::string> scenario_names;

    for (const IniEntry& e : sections.front().entries) {
        try {
            if (e.key == "scenarios") {
                scenario_names = split_list(e.value);
            } else if (e.key == "algorithms") {
                for (const std::string& a : split_list(e.value)) {
                    spec.algorithms.push_back(parse_algorithm(a));
                }
            } else if (e.key == "providers") {
                spec.providers = split_list(e.value);
            } else if (e.key == "mu_values") {
                spec.mu_values.clear();
                for (const std::string& m : split_list(e.value)) {
                    spec.mu_values.push_back(static_cast<int>(parse_int(m, e.key)));
                }
            } else if (e.key == "repetitions") {
                spec.repetitions = static_cast<int>(parse_int(e.value, e.key));
            } else if (e.key == "base_seed") {
                spec.base_seed = static_cast<std::uint64_t>(parse_int(e.value, e.key));
            } else if (e.key == "output_dir") {
                spec.output_dir = e.value;
            } else {
                throw std::runtime_error("unknown key '" + e.key + "'");
            }
        } catch (const std::invalid_argument& err) {
            throw std::runtime_error(path.string() + ":" + std::to_string(e.line) + ": " +
                                     err.what());
        } catch (const std::runtime_error& err) {
            throw std::runtime_error(path.string() + ":" + std::to_string(e.line) + ": " +
                                     err.what());
        }
    }

    // Scenario sections; '[scenario NAME]' may override presets or define
    // new scenarios from the defaults.
    struct NamedSection {
        std::string name;
        const IniSection* section;
    };
    std::vector<NamedSection> scenario_sections;
    for (const IniSection& s : sections) {
        if (s.name.empty()) continue;
        std::vector<std::string> words = split_list(s.name, ' ');
        if (words.size() != 2 || words[0] != "scenario") {
            throw std::runtime_error(path.string() + ":" + std::to_string(s.line) +
                                     ": unexpected section [" + s.name +
                                     "] (expected [scenario NAME])");
        }
        scenario_sections.push_back({words[1], &s});
    }

    if (scenario_names.empty()) {
        throw std::runtime_error(path.string() + ": missing required key 'scenarios'");
    }
    for (const std::string& name : scenario_names) {
        ScenarioSpec s;
        if (is_preset_scenario(name)) {
            s = preset_scenario(name);
        } else {
            s.name = name;
        }
        const NamedSection* overrides = nullptr;
        for (const NamedSection& ns : scenario_sections) {
            if (ns.name == name) overrides = &ns;
        }
        if (overrides) {
            for (const IniEntry& e : overrides->section->entries) {
                apply_scenario_override(s, e, path);
            }
        }
        if (s.agents <= 0) {
            throw std::runtime_error(path.string() + ": scenario '" + name +
                                     "' is not a preset and does not set 'agents'");
        }
        spec.scenarios.push_back(std::move(s));
    }
    for (const NamedSection& ns : scenario_sections) {
        if (std::find(scenario_names.begin(), scenario_names.end(), ns.name) ==
            scenario_names.end()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(ns.section->line) +
                                     ": section for scenario '" + ns.name +
                                     "' which is not in 'scenarios'");
        }
    }

    if (spec.algorithms.empty()) {
        throw std::runtime_error(path.string() + ": missing required key 'algorithms'");
    }
    if (spec.providers.empty()) {
        throw std::runtime_error(path.string() + ": missing required key 'providers'");
    }
    spec.validate();
    return spec;
}

}  // namespace hybridsim
