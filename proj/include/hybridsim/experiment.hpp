#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hybridsim/config.hpp"
#include "hybridsim/cost.hpp"
#include "hybridsim/partition.hpp"
#include "hybridsim/sim.hpp"

namespace hybridsim {

struct RunRecord {
    std::string run_id;  // scenario-algorithm-provider-muM-sSEED
    std::string scenario;
    Algorithm algorithm = Algorithm::Grid;
    std::string provider;
    int mu = 0;
    std::uint64_t seed = 0;
    bool truncated = false;
    SimulationMetrics metrics;
    CostReport cost;
};

std::string make_run_id(const std::string& scenario, Algorithm algorithm,
                        const std::string& provider, int mu, std::uint64_t seed);

// Builds the partition plan for one run: k-means over the initial agent
// positions or the fixed 2x2 grid, then marks the scenario's cloud
// partition. The k-means generator is seeded with the run seed (the world
// generator is separate, so spawn draws don't shift the clustering).
PartitionPlan build_plan(const ScenarioSpec& scenario, Algorithm algorithm,
                         const WorldState& world, std::uint64_t seed);

struct SingleRun {
    SimulationTrace trace;
    SimulationMetrics metrics;
    bool truncated = false;
};

SingleRun simulate_single(const ScenarioSpec& scenario, Algorithm algorithm, std::uint64_t seed,
                          bool keep_messages = false);

// Runs the full cross product. Each (scenario, algorithm, seed) tuple is
// simulated once and priced under every (provider, mu); seeds are
// base_seed..base_seed+repetitions-1. Tuples may run on up to `jobs`
// threads; records are sorted canonically afterwards, so concurrency never
// shows in the output. Writes records.jsonl into spec.output_dir and
// returns the records.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const ProviderCatalog& catalog,
                                      int jobs = 1);

// Canonical record order: scenario, algorithm, provider, mu, seed.
void sort_records(std::vector<RunRecord>& records);

void write_records(const std::vector<RunRecord>& records, const std::filesystem::path& path);
std::vector<RunRecord> read_records(const std::filesystem::path& path);

}  // namespace hybridsim
