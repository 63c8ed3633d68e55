#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hybridsim/geometry.hpp"

namespace hybridsim {

enum class Role { Rescuer, Victim };

struct GridEnvironment {
    int width = 100;
    int height = 100;
    std::vector<Coord> exits;  // cells; an agent standing on one leaves the world

    bool contains(Coord c) const {
        return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height;
    }
    void validate() const;  // throws std::invalid_argument
};

// Four exits, one per corner cell.
std::vector<Coord> corner_exits(int width, int height);

struct SimParams {
    int aoi_range = 5;  // Chebyshev radius of the interaction neighborhood
    std::uint64_t message_size_bytes = 1000;
    std::uint64_t agent_size_bytes = 10000;
    int max_ticks = 2000;
    int spawn_radius = 10;  // Chebyshev radius of a group's spawn box
    std::uint64_t seed = 0;

    void validate() const;
};

// How group anchor points are chosen inside the regular ceil(sqrt(groups))
// lattice laid over the environment:
//   CellCenter  - anchor is the exact center of the group's lattice cell.
//   CellUniform - anchor is drawn uniformly (seeded) inside the cell, kept
//                 far enough from the environment edge that the spawn box
//                 fits, and redrawn until the groups' spawn boxes are out of
//                 message range of each other. This is the default for
//                 experiment scenarios; exact centers make every group sit
//                 wholly inside one grid region and one Voronoi cell, which
//                 flattens the comparison the experiments are about.
enum class SpawnMode { CellCenter, CellUniform };

struct ScenarioConfig {
    int total_agents = 0;
    int rescuer_count = 0;
    int group_count = 0;
    GridEnvironment env;
    SimParams params;
    SpawnMode spawn_mode = SpawnMode::CellUniform;

    void validate() const;
};

struct AgentState {
    int id = 0;
    Role role = Role::Victim;
    Coord pos;
    int partition = 0;
    bool alive = true;
};

struct WorldState {
    GridEnvironment env;
    SimParams params;
    std::vector<AgentState> agents;  // ids are dense 0..N-1 and index this vector
    int tick = 0;
    int alive_count = 0;
};

struct Move {
    int id = 0;
    Coord from;
    Coord to;
};

struct Message {
    int sender = 0;
    int receiver = 0;
};

struct TickEvents {
    std::vector<Move> moves;          // ascending agent id, one entry per alive agent
    std::vector<Message> messages;    // ascending (sender, receiver)
    std::vector<int> exits_reached;   // ascending agent id
};

// Lattice-cell anchor points for the groups, in group order. Exposed for
// tests and for the spawn documentation: group g occupies cell
// (g % G, g / G) of the G x G lattice, G = ceil(sqrt(group_count)).
std::vector<Coord> group_cell_centers(const GridEnvironment& env, int group_count);

// Builds the initial world. Deterministic per config.params.seed. RNG draw
// order: in CellUniform mode, the group anchors first (rounds of one x and
// one y per group, ascending, redrawn until the spawn boxes are mutually
// out of message range), then per-group member offsets (dx then dy, member
// ascending); CellCenter mode skips the anchor draws. Anchor placement
// never depends on the agent count. Group sizes are total/groups with
// the remainder absorbed by the last group. Rescuers are dealt round-robin
// across groups; the first rescuer of a group sits exactly on the anchor,
// everyone else spawns uniformly within spawn_radius (Chebyshev), clamped
// to the environment.
WorldState init_world(const ScenarioConfig& config);

// Nearest exit by Euclidean distance; ties broken by lowest exit index.
Coord nearest_exit(Coord pos, const GridEnvironment& env);

// Nearest alive rescuer by Euclidean distance; ties broken by lowest id.
// Returns nullopt when no rescuer is alive.
std::optional<int> nearest_rescuer(const AgentState& victim, const WorldState& world);

// Advances the world by one tick:
//   1. every alive agent makes one Chebyshev step (rescuers toward their
//      nearest exit, victims toward their nearest alive rescuer's pre-move
//      position, or toward their nearest exit once no rescuer is alive);
//   2. agents whose post-move cell is an exit leave the world;
//   3. every ordered pair of distinct alive agents within aoi_range
//      (Chebyshev, post-move) exchanges one directed message.
// Victims aim at pre-move rescuer positions, so all targets come from the
// snapshot taken at tick start and processing is a single ascending-id pass.
TickEvents step(WorldState& world);

}  // namespace hybridsim
