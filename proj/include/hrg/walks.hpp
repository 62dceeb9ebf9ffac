#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrg/graph.hpp"
#include "hrg/points.hpp"

namespace hrg {

struct WalkTrace {
    std::vector<std::uint32_t> vertices;  // length steps+1
    std::uint64_t seed = 0;
};

/// Uniform-neighbor walk; the step-s move is drawn from (seed, s).
WalkTrace simple_walk(const Graph& g, std::uint32_t start, std::size_t steps,
                      std::uint64_t seed);

struct TraceDistanceStats {
    double mean_pairwise = 0.0;
    double max_pairwise = 0.0;
};

/// Pairwise Euclidean distances over the distinct visited vertices;
/// a single-vertex trace gives (0, 0).
TraceDistanceStats trace_distance_stats(const WalkTrace& trace, const PointSet& points);

struct BatchWalkStats {
    double mean_of_means = 0.0;
    double sd_of_means = 0.0;
    double mean_of_maxes = 0.0;
    double sd_of_maxes = 0.0;
    std::size_t num_walks = 0;
    std::size_t steps = 0;
};

/// num_walks independent walks from uniformly random start vertices;
/// sample sd (n-1), defined as 0 for a single walk.
BatchWalkStats batch_walk_stats(const Graph& g, const PointSet& points,
                                std::size_t num_walks, std::size_t steps, std::uint64_t seed);

struct SpawnEvent {
    std::size_t step = 0;       // global time of the triggering first visit
    std::uint32_t vertex = 0;   // where the new replicant will start
    std::uint32_t parent = 0;   // replicant id that triggered the spawn
};

struct ReplicantTrace {
    std::uint32_t id = 0;
    std::size_t start_step = 0;
    std::uint32_t start_vertex = 0;
    std::vector<std::uint32_t> vertices;  // positions at start_step..steps
};

struct ReplicationRecord {
    std::vector<SpawnEvent> spawn_events;
    std::vector<ReplicantTrace> traces;  // traces[0] is the initial replicant
    std::vector<char> visited;           // visited[v] = 1 iff some replicant reached v
    std::size_t steps = 0;
    std::size_t delay = 0;
};

/// Synchronous replicating walk: one replicant starts at `start` (marked
/// visited at time 0, no spawn); each replicant stepping onto a globally
/// unvisited vertex marks it and schedules a child there `delay` steps
/// later; the replicant-id/step keyed draws make iteration order moot.
ReplicationRecord replicating_walk(const Graph& g, std::uint32_t start, std::size_t steps,
                                   std::size_t delay, std::uint64_t seed);

/// P(X_n = .) from a unit mass at start, by n applications of A D^{-1}.
/// Requires n <= 10^4 and graph size <= 512.
std::vector<double> exact_distribution(const Graph& g, std::uint32_t start, std::size_t n);

/// pi(x) = deg(x) / volume.
std::vector<double> stationary_distribution(const Graph& g);

struct MixingBoundRow {
    std::uint32_t vertex = 0;
    double lhs = 0.0;    // |P(X_n = x) - pi(x)|
    double bound = 0.0;  // sqrt(nu(x)/v_min) |lambda1 - 1|^n
};

struct MixingBoundReport {
    bool bipartite = false;  // flagged; rows empty in that case
    std::size_t n = 0;
    double worst_ratio = 0.0;  // max over vertices of lhs/bound
    std::vector<MixingBoundRow> rows;
};

/// Diagnostic comparison of the mixing display's two sides (not asserted).
MixingBoundReport mixing_bound_report(const Graph& g, std::uint32_t start, std::size_t n);

/// CSV "step,vertex,x,y".
void write_walk_csv(const WalkTrace& trace, const PointSet& points, const std::string& path);

/// CSV "step,vertex,parent_id,x,y"; first row is the initial replicant
/// with parent_id -1, then one row per spawn event.
void write_replication_csv(const ReplicationRecord& rec, std::uint32_t start,
                           const PointSet& points, const std::string& path);

namespace reference {

/// Serial twin of hrg::batch_walk_stats.
BatchWalkStats batch_walk_stats(const Graph& g, const PointSet& points,
                                std::size_t num_walks, std::size_t steps, std::uint64_t seed);

}  // namespace reference

}  // namespace hrg
