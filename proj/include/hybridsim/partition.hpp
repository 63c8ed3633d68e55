#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hybridsim/geometry.hpp"
#include "hybridsim/world.hpp"

namespace hybridsim {

enum class Placement { Local, Cloud };

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Regular rows x cols tiling of the environment. Region boundaries sit at
// floor(i*width/cols) and floor(j*height/rows); region index = row*cols+col.
struct GridRegions {
    int rows = 0;
    int cols = 0;
    int width = 0;
    int height = 0;
};

// Voronoi cells of the final k-means centroids; nearest centroid by
// Euclidean distance, ties to the lowest centroid index.
struct VoronoiCells {
    std::vector<Point> centroids;
};

using OwnershipMap = std::variant<GridRegions, VoronoiCells>;

struct PartitionPlan {
    int k = 0;
    std::vector<int> assignment;        // agent id -> partition index
    OwnershipMap ownership;
    std::vector<Placement> placement;   // partition index -> machine kind
};

struct MigrationEvent {
    int tick = 0;
    int agent = 0;
    int from = 0;
    int to = 0;
};

enum class KMeansInit { Forgy, KMeansPlusPlus };

struct KMeansOptions {
    int max_iters = 100;
    double tol = 1e-6;          // stop when no centroid moved at least this far
    KMeansInit init = KMeansInit::KMeansPlusPlus;
    int restarts = 4;           // best final SSE wins; ties keep the earliest
};

struct KMeansResult {
    PartitionPlan plan;
    std::vector<Point> centroids;
    std::vector<double> sse_log;  // winning restart: SSE after init and after each iteration
    int iterations = 0;           // iterations of the winning restart
};

// Lloyd's algorithm over agent positions (indexed by agent id). Seeded and
// deterministic; one generator feeds all restarts in order. Empty clusters
// are re-seeded to the point farthest from its nearest current centroid.
// Returns a fixpoint: each point is assigned to its nearest final centroid
// (ties to the lowest index). Rejects k < 1, an empty position list, and
// k > number of points (both init schemes sample k distinct agents).
KMeansResult kmeans_partition(const std::vector<Coord>& positions, int k, std::uint64_t seed,
                              const KMeansOptions& options = {});

// Fixed spatial tiling; assignment[i] = region of positions[i]. All
// placements start Local.
PartitionPlan grid_partition(const GridEnvironment& env, int rows, int cols,
                             const std::vector<Coord>& positions);

// Partition owning a cell under the plan's ownership map.
int ownership(const PartitionPlan& plan, Coord pos);

// One pass over the tick's moves in order: every move whose destination is
// owned by a different partition than the agent's current assignment yields
// a MigrationEvent. Pure; apply_migrations commits the reassignments.
std::vector<MigrationEvent> detect_migrations(const PartitionPlan& plan,
                                              const std::vector<Move>& moves, int tick);
void apply_migrations(PartitionPlan& plan, const std::vector<MigrationEvent>& events);

// Marks exactly one partition Cloud and all others Local.
void assign_cloud(PartitionPlan& plan, int cloud_index);

const char* placement_name(Placement p);

}  // namespace hybridsim
