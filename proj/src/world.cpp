#include "hybridsim/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hybridsim/rng.hpp"

namespace hybridsim {

namespace {

int clamp_int(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

void GridEnvironment::validate() const {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("environment dimensions must be positive");
    }
    if (exits.empty()) {
        throw std::invalid_argument("environment needs at least one exit");
    }
    for (size_t i = 0; i < exits.size(); ++i) {
        if (!contains(exits[i])) {
            throw std::invalid_argument("exit " + std::to_string(i) + " is out of bounds");
        }
        for (size_t j = 0; j < i; ++j) {
            if (exits[j] == exits[i]) {
                throw std::invalid_argument("duplicate exit cell at index " + std::to_string(i));
            }
        }
    }
}

std::vector<Coord> corner_exits(int width, int height) {
    return {{0, 0}, {width - 1, 0}, {0, height - 1}, {width - 1, height - 1}};
}

void SimParams::validate() const {
    if (aoi_range < 0) throw std::invalid_argument("aoi_range must be >= 0");
    if (message_size_bytes == 0) throw std::invalid_argument("message_size_bytes must be positive");
    if (agent_size_bytes == 0) throw std::invalid_argument("agent_size_bytes must be positive");
    if (max_ticks <= 0) throw std::invalid_argument("max_ticks must be positive");
    if (spawn_radius < 0) throw std::invalid_argument("spawn_radius must be >= 0");
}

void ScenarioConfig::validate() const {
    env.validate();
    params.validate();
    if (total_agents <= 0) throw std::invalid_argument("total_agents must be positive");
    if (group_count <= 0) throw std::invalid_argument("group_count must be positive");
    if (total_agents < group_count) {
        throw std::invalid_argument("total_agents must be at least group_count");
    }
    if (rescuer_count < 0 || rescuer_count > total_agents) {
        throw std::invalid_argument("rescuer_count must be between 0 and total_agents");
    }
}

std::vector<Coord> group_cell_centers(const GridEnvironment& env, int group_count) {
    int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(group_count))));
    std::vector<Coord> centers;
    centers.reserve(group_count);
    for (int grp = 0; grp < group_count; ++grp) {
        int col = grp % g;
        int row = grp / g;
        // Center of cell [floor(col*w/g), floor((col+1)*w/g)) along each axis.
        int cx = static_cast<int>((2 * col + 1) * static_cast<long long>(env.width) / (2 * g));
        int cy = static_cast<int>((2 * row + 1) * static_cast<long long>(env.height) / (2 * g));
        centers.push_back({cx, cy});
    }
    return centers;
}

WorldState init_world(const ScenarioConfig& config) {
    config.validate();

    const int n = config.total_agents;
    const int groups = config.group_count;
    const int r = config.params.spawn_radius;
    const GridEnvironment& env = config.env;

    Rng rng(config.params.seed);

    // Anchor selection. Draw order: anchors for every group first (x then
    // y), so the anchors for a given seed do not depend on the agent count.
    std::vector<Coord> anchors;
    if (config.spawn_mode == SpawnMode::CellCenter) {
        anchors = group_cell_centers(env, groups);
    } else {
        int g = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(groups))));
        struct Range {
            int x_lo, x_hi, y_lo, y_hi;
        };
        std::vector<Range> ranges;
        ranges.reserve(groups);
        for (int grp = 0; grp < groups; ++grp) {
            int col = grp % g;
            int row = grp / g;
            int cell_x_lo = static_cast<int>(static_cast<long long>(col) * env.width / g);
            int cell_x_hi = static_cast<int>(static_cast<long long>(col + 1) * env.width / g) - 1;
            int cell_y_lo = static_cast<int>(static_cast<long long>(row) * env.height / g);
            int cell_y_hi = static_cast<int>(static_cast<long long>(row + 1) * env.height / g) - 1;
            // Keep the whole spawn box inside the environment.
            Range rr;
            rr.x_lo = std::max(cell_x_lo, r);
            rr.x_hi = std::min(cell_x_hi, env.width - 1 - r);
            rr.y_lo = std::max(cell_y_lo, r);
            rr.y_hi = std::min(cell_y_hi, env.height - 1 - r);
            if (rr.x_lo > rr.x_hi) {
                rr.x_lo = rr.x_hi = clamp_int((cell_x_lo + cell_x_hi) / 2, 0, env.width - 1);
            }
            if (rr.y_lo > rr.y_hi) {
                rr.y_lo = rr.y_hi = clamp_int((cell_y_lo + cell_y_hi) / 2, 0, env.height - 1);
            }
            ranges.push_back(rr);
        }
        // Groups must not spawn on top of each other: two overlapping (or
        // message-range-adjacent) spawn boxes blur the group structure that
        // both partitioning schemes are meant to capture. Redraw the whole
        // anchor set until every pair is separated by more than
        // 2*spawn_radius + aoi_range on at least one axis. Each round draws
        // one (x, y) pair per group in group order.
        const int min_gap = 2 * r + config.params.aoi_range;
        bool placed = false;
        for (int round = 0; round < 256 && !placed; ++round) {
            anchors.clear();
            for (const Range& rr : ranges) {
                Coord a;
                a.x = rng.uniform_int(rr.x_lo, rr.x_hi);
                a.y = rng.uniform_int(rr.y_lo, rr.y_hi);
                anchors.push_back(a);
            }
            placed = true;
            for (size_t i = 0; i + 1 < anchors.size() && placed; ++i) {
                for (size_t j = i + 1; j < anchors.size(); ++j) {
                    if (std::abs(anchors[i].x - anchors[j].x) <= min_gap &&
                        std::abs(anchors[i].y - anchors[j].y) <= min_gap) {
                        placed = false;
                        break;
                    }
                }
            }
        }
        // Pathological geometries (tiny cells, huge radius) may never
        // separate; fall back to the deterministic cell centers.
        if (!placed) anchors = group_cell_centers(env, groups);
    }

    // Group sizes: equal split, remainder goes to the last group. Rescuers
    // are dealt round-robin so each of the first `rescuer_count % groups`...
    // in the evaluated configurations rescuer_count == group_count and each
    // group simply leads with one rescuer.
    std::vector<int> group_size(groups, n / groups);
    group_size.back() += n % groups;
    std::vector<int> group_rescuers(groups, 0);
    for (int j = 0; j < config.rescuer_count; ++j) group_rescuers[j % groups] += 1;

    WorldState world;
    world.env = env;
    world.params = config.params;
    world.agents.reserve(n);

    int id = 0;
    for (int grp = 0; grp < groups; ++grp) {
        int rescuers_here = std::min(group_rescuers[grp], group_size[grp]);
        for (int member = 0; member < group_size[grp]; ++member) {
            AgentState agent;
            agent.id = id++;
            agent.role = member < rescuers_here ? Role::Rescuer : Role::Victim;
            if (member == 0 && rescuers_here > 0) {
                agent.pos = anchors[grp];  // the group's leader sits on the anchor
            } else {
                int dx = rng.uniform_int(-r, r);
                int dy = rng.uniform_int(-r, r);
                agent.pos.x = clamp_int(anchors[grp].x + dx, 0, env.width - 1);
                agent.pos.y = clamp_int(anchors[grp].y + dy, 0, env.height - 1);
            }
            world.agents.push_back(agent);
        }
    }
    world.alive_count = n;
    return world;
}

Coord nearest_exit(Coord pos, const GridEnvironment& env) {
    long long best = -1;
    Coord best_exit = env.exits.front();
    for (const Coord& e : env.exits) {
        long long d = euclid_sq(pos, e);
        if (best < 0 || d < best) {
            best = d;
            best_exit = e;
        }
    }
    return best_exit;
}

std::optional<int> nearest_rescuer(const AgentState& victim, const WorldState& world) {
    long long best = -1;
    int best_id = -1;
    for (const AgentState& a : world.agents) {
        if (a.role != Role::Rescuer || !a.alive) continue;
        long long d = euclid_sq(victim.pos, a.pos);
        if (best < 0 || d < best) {
            best = d;
            best_id = a.id;
        }
    }
    if (best_id < 0) return std::nullopt;
    return best_id;
}

TickEvents step(WorldState& world) {
    if (world.alive_count <= 0) {
        throw std::logic_error("step called with no alive agents");
    }
    if (world.tick >= world.params.max_ticks) {
        throw std::logic_error("step called past max_ticks");
    }

    TickEvents events;

    // Snapshot of pre-move rescuer positions; victims aim at these even
    // though rescuers move in the same tick.
    struct RescuerRef {
        int id;
        Coord pos;
    };
    std::vector<RescuerRef> rescuers;
    for (const AgentState& a : world.agents) {
        if (a.role == Role::Rescuer && a.alive) rescuers.push_back({a.id, a.pos});
    }

    // Movement, ascending id. One Chebyshev step per axis toward the target.
    events.moves.reserve(world.alive_count);
    for (AgentState& a : world.agents) {
        if (!a.alive) continue;
        Coord target;
        if (a.role == Role::Rescuer) {
            target = nearest_exit(a.pos, world.env);
        } else {
            long long best = -1;
            int best_id = -1;
            Coord best_pos{};
            for (const RescuerRef& rr : rescuers) {
                long long d = euclid_sq(a.pos, rr.pos);
                if (best < 0 || d < best) {
                    best = d;
                    best_id = rr.id;
                    best_pos = rr.pos;
                }
            }
            target = best_id >= 0 ? best_pos : nearest_exit(a.pos, world.env);
        }
        Coord from = a.pos;
        a.pos.x += sign_step(a.pos.x, target.x);
        a.pos.y += sign_step(a.pos.y, target.y);
        events.moves.push_back({a.id, from, a.pos});
    }

    // Exit absorption on post-move positions.
    for (AgentState& a : world.agents) {
        if (!a.alive) continue;
        for (const Coord& e : world.env.exits) {
            if (a.pos == e) {
                a.alive = false;
                world.alive_count -= 1;
                events.exits_reached.push_back(a.id);
                break;
            }
        }
    }

    // Messages: every ordered pair of alive agents within aoi_range
    // (Chebyshev). Bucketing by cell makes the window scan enumerate
    // exactly the in-range agents; receivers are sorted per sender so the
    // event list is canonical.
    const int range = world.params.aoi_range;
    const int w = world.env.width;
    const int h = world.env.height;
    std::vector<int> cell_count(static_cast<size_t>(w) * h + 1, 0);
    for (const AgentState& a : world.agents) {
        if (a.alive) cell_count[static_cast<size_t>(a.pos.y) * w + a.pos.x + 1] += 1;
    }
    for (size_t i = 1; i < cell_count.size(); ++i) cell_count[i] += cell_count[i - 1];
    std::vector<int> cell_ids(world.alive_count >= 0 ? world.alive_count : 0);
    {
        std::vector<int> cursor(cell_count.begin(), cell_count.end() - 1);
        for (const AgentState& a : world.agents) {
            if (a.alive) cell_ids[cursor[static_cast<size_t>(a.pos.y) * w + a.pos.x]++] = a.id;
        }
    }
    std::vector<int> in_range;
    for (const AgentState& a : world.agents) {
        if (!a.alive) continue;
        in_range.clear();
        int x_lo = std::max(0, a.pos.x - range);
        int x_hi = std::min(w - 1, a.pos.x + range);
        int y_lo = std::max(0, a.pos.y - range);
        int y_hi = std::min(h - 1, a.pos.y + range);
        for (int y = y_lo; y <= y_hi; ++y) {
            size_t row = static_cast<size_t>(y) * w;
            int begin = cell_count[row + x_lo];
            int end = cell_count[row + x_hi + 1];
            for (int i = begin; i < end; ++i) {
                if (cell_ids[i] != a.id) in_range.push_back(cell_ids[i]);
            }
        }
        std::sort(in_range.begin(), in_range.end());
        for (int other : in_range) events.messages.push_back({a.id, other});
    }

    world.tick += 1;
    return events;
}

}  // namespace hybridsim
