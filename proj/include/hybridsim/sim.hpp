#pragma once

#include <optional>
#include <vector>

#include "hybridsim/metrics.hpp"
#include "hybridsim/partition.hpp"
#include "hybridsim/world.hpp"

namespace hybridsim {

struct TickRecord {
    TickEvents events;
    std::vector<MigrationEvent> migrations;
};

struct SimulationTrace {
    GridEnvironment env;
    SimParams params;
    std::vector<AgentState> initial_agents;
    PartitionPlan initial_plan;
    std::vector<TickRecord> ticks;
    SimulationMetrics metrics;
    bool truncated = false;          // stopped by max_ticks with agents still alive
    bool messages_recorded = true;   // false when per-message events were dropped from the trace
};

struct RunOptions {
    // Dense scenarios generate millions of messages; metrics are always
    // counted, but storing each message in the trace is opt-out.
    bool keep_messages = true;
    std::optional<double> t_exec_override_s;
};

// Full simulation loop: rebuilds the world from the config (deterministic
// per seed), walks ticks until everyone has left or max_ticks is hit, feeds
// each tick through migration detection and the metrics accumulator. The
// plan must cover all agent ids and its assignment must match ownership of
// the initial positions.
SimulationTrace run(const ScenarioConfig& config, const PartitionPlan& plan,
                    const RunOptions& options = {});

}  // namespace hybridsim
