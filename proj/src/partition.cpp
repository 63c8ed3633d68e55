#include "hybridsim/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hybridsim/rng.hpp"

namespace hybridsim {

namespace {

double dist_sq(Point c, Coord p) {
    double dx = c.x - p.x;
    double dy = c.y - p.y;
    return dx * dx + dy * dy;
}

// Nearest centroid, ties to the lowest index.
int nearest_centroid(const std::vector<Point>& centroids, Coord p) {
    int best = 0;
    double best_d = dist_sq(centroids[0], p);
    for (int c = 1; c < static_cast<int>(centroids.size()); ++c) {
        double d = dist_sq(centroids[c], p);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

double sse_of(const std::vector<Coord>& points, const std::vector<Point>& centroids,
              const std::vector<int>& assign) {
    double total = 0.0;
    for (size_t i = 0; i < points.size(); ++i) total += dist_sq(centroids[assign[i]], points[i]);
    return total;
}

std::vector<int> assign_nearest(const std::vector<Coord>& points,
                                const std::vector<Point>& centroids) {
    std::vector<int> assign(points.size());
    for (size_t i = 0; i < points.size(); ++i) assign[i] = nearest_centroid(centroids, points[i]);
    return assign;
}

// Sample k distinct point indices (partial Fisher-Yates) and use those
// positions as initial centroids.
std::vector<Point> forgy_init(const std::vector<Coord>& points, int k, Rng& rng) {
    std::vector<int> idx(points.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<Point> centroids;
    centroids.reserve(k);
    int n = static_cast<int>(points.size());
    for (int i = 0; i < k; ++i) {
        int j = rng.uniform_int(i, n - 1);
        std::swap(idx[i], idx[j]);
        centroids.push_back({static_cast<double>(points[idx[i]].x),
                             static_cast<double>(points[idx[i]].y)});
    }
    return centroids;
}

// D^2-weighted seeding: each next centroid is drawn with probability
// proportional to the squared distance to the nearest one chosen so far.
std::vector<Point> kmeanspp_init(const std::vector<Coord>& points, int k, Rng& rng) {
    int n = static_cast<int>(points.size());
    std::vector<Point> centroids;
    centroids.reserve(k);
    int first = rng.uniform_int(0, n - 1);
    centroids.push_back({static_cast<double>(points[first].x),
                         static_cast<double>(points[first].y)});
    std::vector<double> d2(n);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const Point& ctr : centroids) best = std::min(best, dist_sq(ctr, points[i]));
            d2[i] = best;
            total += best;
        }
        int pick;
        if (total <= 0.0) {
            pick = rng.uniform_int(0, n - 1);  // all points already covered exactly
        } else {
            double u = rng.uniform01() * total;
            double acc = 0.0;
            pick = n - 1;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
        }
        centroids.push_back({static_cast<double>(points[pick].x),
                             static_cast<double>(points[pick].y)});
    }
    return centroids;
}

struct LloydOutcome {
    std::vector<Point> centroids;
    std::vector<int> assign;
    std::vector<double> sse_log;
    int iterations = 0;
};

LloydOutcome lloyd(const std::vector<Coord>& points, int k, std::vector<Point> centroids,
                   const KMeansOptions& options) {
    int n = static_cast<int>(points.size());
    LloydOutcome out;
    out.assign = assign_nearest(points, centroids);
    out.sse_log.push_back(sse_of(points, centroids, out.assign));

    for (int iter = 1; iter <= options.max_iters; ++iter) {
        // Recompute each centroid as the mean of its members.
        std::vector<double> sx(k, 0.0), sy(k, 0.0);
        std::vector<int> count(k, 0);
        for (int i = 0; i < n; ++i) {
            sx[out.assign[i]] += points[i].x;
            sy[out.assign[i]] += points[i].y;
            count[out.assign[i]] += 1;
        }
        std::vector<Point> updated(k);
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) {
                updated[c] = {sx[c] / count[c], sy[c] / count[c]};
            } else {
                updated[c] = centroids[c];  // placeholder until re-seeded below
            }
        }
        // Re-seed empty clusters one at a time to the point farthest from
        // its nearest current centroid (ties to the lowest point index).
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) continue;
            int far_idx = 0;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::max();
                for (const Point& ctr : updated) best = std::min(best, dist_sq(ctr, points[i]));
                if (best > far_d) {
                    far_d = best;
                    far_idx = i;
                }
            }
            updated[c] = {static_cast<double>(points[far_idx].x),
                          static_cast<double>(points[far_idx].y)};
        }

        double max_disp = 0.0;
        for (int c = 0; c < k; ++c) {
            double ddx = updated[c].x - centroids[c].x;
            double ddy = updated[c].y - centroids[c].y;
            max_disp = std::max(max_disp, std::sqrt(ddx * ddx + ddy * ddy));
        }

        std::vector<int> next_assign = assign_nearest(points, updated);
        bool changed = next_assign != out.assign;
        centroids = std::move(updated);
        out.assign = std::move(next_assign);
        out.sse_log.push_back(sse_of(points, centroids, out.assign));
        out.iterations = iter;
        if (!changed || max_disp < options.tol) break;
    }
    out.centroids = std::move(centroids);
    return out;
}

}  // namespace

KMeansResult kmeans_partition(const std::vector<Coord>& positions, int k, std::uint64_t seed,
                              const KMeansOptions& options) {
    if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (positions.empty()) throw std::invalid_argument("kmeans: empty position list");
    if (k > static_cast<int>(positions.size())) {
        throw std::invalid_argument("kmeans: k exceeds the number of points");
    }
    if (options.restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");

    Rng rng(seed);
    LloydOutcome best;
    double best_sse = std::numeric_limits<double>::max();
    for (int r = 0; r < options.restarts; ++r) {
        std::vector<Point> init = options.init == KMeansInit::Forgy
                                      ? forgy_init(positions, k, rng)
                                      : kmeanspp_init(positions, k, rng);
        LloydOutcome out = lloyd(positions, k, std::move(init), options);
        double sse = out.sse_log.back();
        if (sse < best_sse) {
            best_sse = sse;
            best = std::move(out);
        }
    }

    KMeansResult result;
    result.centroids = best.centroids;
    result.sse_log = std::move(best.sse_log);
    result.iterations = best.iterations;
    result.plan.k = k;
    result.plan.assignment = std::move(best.assign);
    result.plan.ownership = VoronoiCells{best.centroids};
    result.plan.placement.assign(k, Placement::Local);
    return result;
}

namespace {

// Column (or row) of x given boundaries at floor(i*extent/parts): the
// largest i with floor(i*extent/parts) <= x. parts is small, scan.
int tile_index(int x, int extent, int parts) {
    int idx = 0;
    for (int i = 1; i < parts; ++i) {
        long long boundary = static_cast<long long>(i) * extent / parts;
        if (x >= boundary) idx = i;
    }
    return idx;
}

}  // namespace

PartitionPlan grid_partition(const GridEnvironment& env, int rows, int cols,
                             const std::vector<Coord>& positions) {
    env.validate();
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid_partition: rows and cols must be >= 1");

    PartitionPlan plan;
    plan.k = rows * cols;
    plan.ownership = GridRegions{rows, cols, env.width, env.height};
    plan.placement.assign(plan.k, Placement::Local);
    plan.assignment.reserve(positions.size());
    for (const Coord& p : positions) plan.assignment.push_back(ownership(plan, p));
    return plan;
}

int ownership(const PartitionPlan& plan, Coord pos) {
    if (const GridRegions* g = std::get_if<GridRegions>(&plan.ownership)) {
        int col = tile_index(pos.x, g->width, g->cols);
        int row = tile_index(pos.y, g->height, g->rows);
        return row * g->cols + col;
    }
    const VoronoiCells& v = std::get<VoronoiCells>(plan.ownership);
    return nearest_centroid(v.centroids, pos);
}

std::vector<MigrationEvent> detect_migrations(const PartitionPlan& plan,
                                              const std::vector<Move>& moves, int tick) {
    std::vector<MigrationEvent> events;
    for (const Move& mv : moves) {
        int current = plan.assignment.at(mv.id);
        int owner = ownership(plan, mv.to);
        if (owner != current) events.push_back({tick, mv.id, current, owner});
    }
    return events;
}

void apply_migrations(PartitionPlan& plan, const std::vector<MigrationEvent>& events) {
    for (const MigrationEvent& ev : events) plan.assignment.at(ev.agent) = ev.to;
}

void assign_cloud(PartitionPlan& plan, int cloud_index) {
    if (cloud_index < 0 || cloud_index >= plan.k) {
        throw std::invalid_argument("assign_cloud: cloud index " + std::to_string(cloud_index) +
                                    " out of range for k=" + std::to_string(plan.k));
    }
    plan.placement.assign(plan.k, Placement::Local);
    plan.placement[cloud_index] = Placement::Cloud;
}

const char* placement_name(Placement p) { return p == Placement::Cloud ? "cloud" : "local"; }

}  // namespace hybridsim
