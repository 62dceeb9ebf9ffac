#include "hrg/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrg/io.hpp"
#include "hrg/rng.hpp"
#include "hrg/spectral.hpp"

namespace hrg {

WalkTrace simple_walk(const Graph& g, std::uint32_t start, std::size_t steps,
                      std::uint64_t seed) {
    if (start >= g.num_vertices()) throw ConfigError("simple_walk: start out of range");
    WalkTrace trace;
    trace.seed = seed;
    trace.vertices.reserve(steps + 1);
    trace.vertices.push_back(start);
    std::uint32_t cur = start;
    for (std::size_t s = 1; s <= steps; ++s) {
        auto deg = g.degree(cur);
        if (deg == 0) throw ConfigError("simple_walk: stuck on a degree-0 vertex");
        auto pick = rng::bounded(rng::hash2(seed, s), deg);
        cur = g.neighbors_begin(cur)[pick];
        trace.vertices.push_back(cur);
    }
    return trace;
}

TraceDistanceStats trace_distance_stats(const WalkTrace& trace, const PointSet& points) {
    if (trace.vertices.empty()) throw ConfigError("trace_distance_stats: empty trace");
    std::vector<std::uint32_t> seen(trace.vertices);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    TraceDistanceStats stats;
    if (seen.size() < 2) return stats;
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < seen.size(); ++a) {
        for (std::size_t b = a + 1; b < seen.size(); ++b) {
            double d = distance(points[seen[a]], points[seen[b]]);
            sum += d;
            stats.max_pairwise = std::max(stats.max_pairwise, d);
            ++pairs;
        }
    }
    stats.mean_pairwise = sum / static_cast<double>(pairs);
    return stats;
}

namespace {

// start vertex and per-walk stream for walk w of a batch
std::uint32_t batch_start(const Graph& g, std::uint64_t seed, std::size_t w) {
    return static_cast<std::uint32_t>(
        rng::bounded(rng::hash3(seed, 0, w), g.num_vertices()));
}

BatchWalkStats aggregate_batch(const std::vector<TraceDistanceStats>& per_walk,
                               std::size_t steps) {
    BatchWalkStats out;
    out.num_walks = per_walk.size();
    out.steps = steps;
    const auto nw = static_cast<double>(per_walk.size());
    double sum_mean = 0.0, sum_max = 0.0;
    for (const auto& s : per_walk) {
        sum_mean += s.mean_pairwise;
        sum_max += s.max_pairwise;
    }
    out.mean_of_means = sum_mean / nw;
    out.mean_of_maxes = sum_max / nw;
    if (per_walk.size() > 1) {
        double acc_mean = 0.0, acc_max = 0.0;
        for (const auto& s : per_walk) {
            double dm = s.mean_pairwise - out.mean_of_means;
            double dx = s.max_pairwise - out.mean_of_maxes;
            acc_mean += dm * dm;
            acc_max += dx * dx;
        }
        out.sd_of_means = std::sqrt(acc_mean / (nw - 1.0));
        out.sd_of_maxes = std::sqrt(acc_max / (nw - 1.0));
    }
    return out;
}

}  // namespace

BatchWalkStats batch_walk_stats(const Graph& g, const PointSet& points,
                                std::size_t num_walks, std::size_t steps, std::uint64_t seed) {
    if (num_walks == 0) throw ConfigError("batch_walk_stats: need at least one walk");
    if (points.size() != g.num_vertices())
        throw ConfigError("batch_walk_stats: point/vertex count mismatch");
    std::vector<TraceDistanceStats> per_walk(num_walks);
    auto wn = static_cast<std::int64_t>(num_walks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t w = 0; w < wn; ++w) {
        auto trace = simple_walk(g, batch_start(g, seed, static_cast<std::size_t>(w)), steps,
                                 rng::hash3(seed, 1, static_cast<std::size_t>(w)));
        per_walk[w] = trace_distance_stats(trace, points);
    }
    return aggregate_batch(per_walk, steps);
}

namespace reference {

BatchWalkStats batch_walk_stats(const Graph& g, const PointSet& points,
                                std::size_t num_walks, std::size_t steps, std::uint64_t seed) {
    if (num_walks == 0) throw ConfigError("batch_walk_stats: need at least one walk");
    if (points.size() != g.num_vertices())
        throw ConfigError("batch_walk_stats: point/vertex count mismatch");
    std::vector<TraceDistanceStats> per_walk(num_walks);
    for (std::size_t w = 0; w < num_walks; ++w) {
        auto trace = simple_walk(g, batch_start(g, seed, w), steps, rng::hash3(seed, 1, w));
        per_walk[w] = trace_distance_stats(trace, points);
    }
    return aggregate_batch(per_walk, steps);
}

}  // namespace reference

ReplicationRecord replicating_walk(const Graph& g, std::uint32_t start, std::size_t steps,
                                   std::size_t delay, std::uint64_t seed) {
    if (start >= g.num_vertices()) throw ConfigError("replicating_walk: start out of range");
    ReplicationRecord rec;
    rec.steps = steps;
    rec.delay = delay;
    rec.visited.assign(g.num_vertices(), 0);
    rec.visited[start] = 1;
    rec.traces.push_back({0, 0, start, {start}});
    std::uint32_t next_id = 1;

    for (std::size_t t = 1; t <= steps; ++t) {
        std::vector<SpawnEvent> born_now;
        std::size_t active = rec.traces.size();
        for (std::size_t idx = 0; idx < active; ++idx) {
            auto& r = rec.traces[idx];
            if (t <= r.start_step) continue;
            std::uint32_t cur = r.vertices.back();
            auto deg = g.degree(cur);
            if (deg == 0) throw ConfigError("replicating_walk: stuck on a degree-0 vertex");
            auto pick = rng::bounded(rng::hash3(seed, r.id, t), deg);
            std::uint32_t nxt = g.neighbors_begin(cur)[pick];
            r.vertices.push_back(nxt);
            if (!rec.visited[nxt]) {
                rec.visited[nxt] = 1;
                born_now.push_back({t, nxt, r.id});
            }
        }
        for (const auto& ev : born_now) {
            rec.spawn_events.push_back(ev);
            std::size_t child_start = ev.step + delay;
            if (child_start <= steps)
                rec.traces.push_back({next_id, child_start, ev.vertex, {ev.vertex}});
            ++next_id;
        }
    }
    return rec;
}

std::vector<double> exact_distribution(const Graph& g, std::uint32_t start, std::size_t n) {
    const std::size_t size = g.num_vertices();
    if (size > 512) throw ConfigError("exact_distribution: graph too large");
    if (n > 10000) throw ConfigError("exact_distribution: step count too large");
    if (start >= size) throw ConfigError("exact_distribution: start out of range");
    std::vector<double> inv_deg(size);
    for (std::uint32_t v = 0; v < size; ++v) {
        if (g.degree(v) == 0) throw ConfigError("exact_distribution: degree-0 vertex");
        inv_deg[v] = 1.0 / static_cast<double>(g.degree(v));
    }
    std::vector<double> mu(size, 0.0), nxt(size);
    mu[start] = 1.0;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::uint32_t y = 0; y < size; ++y) {
            double acc = 0.0;
            for (auto* p = g.neighbors_begin(y); p != g.neighbors_end(y); ++p)
                acc += mu[*p] * inv_deg[*p];
            nxt[y] = acc;
        }
        mu.swap(nxt);
    }
    return mu;
}

std::vector<double> stationary_distribution(const Graph& g) {
    if (g.volume() == 0) throw ConfigError("stationary_distribution: empty edge set");
    std::vector<double> pi(g.num_vertices());
    auto vol = static_cast<double>(g.volume());
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        pi[v] = static_cast<double>(g.degree(v)) / vol;
    return pi;
}

MixingBoundReport mixing_bound_report(const Graph& g, std::uint32_t start, std::size_t n) {
    MixingBoundReport rep;
    rep.n = n;
    if (is_bipartite(g)) {
        rep.bipartite = true;
        return rep;
    }
    auto p = exact_distribution(g, start, n);
    auto pi = stationary_distribution(g);
    double lam = dense_spectrum(g)[1];
    std::size_t v_min = g.degree(0);
    for (std::uint32_t v = 1; v < g.num_vertices(); ++v) v_min = std::min(v_min, g.degree(v));
    double decay = std::pow(std::abs(lam - 1.0), static_cast<double>(n));
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) {
        MixingBoundRow row;
        row.vertex = v;
        row.lhs = std::abs(p[v] - pi[v]);
        row.bound = std::sqrt(static_cast<double>(g.degree(v)) /
                              static_cast<double>(v_min)) *
                    decay;
        double ratio = row.bound > 0.0
                           ? row.lhs / row.bound
                           : (row.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

void write_walk_csv(const WalkTrace& trace, const PointSet& points, const std::string& path) {
    std::string out = "step,vertex,x,y\n";
    for (std::size_t s = 0; s < trace.vertices.size(); ++s) {
        auto v = trace.vertices[s];
        out += std::to_string(s);
        out += ',';
        out += std::to_string(v);
        out += ',';
        out += io::format_double(points[v].x);
        out += ',';
        out += io::format_double(points[v].y);
        out += '\n';
    }
    io::write_file(path, out);
}

void write_replication_csv(const ReplicationRecord& rec, std::uint32_t start,
                           const PointSet& points, const std::string& path) {
    std::string out = "step,vertex,parent_id,x,y\n";
    auto row = [&](std::size_t step, std::uint32_t vertex, long long parent) {
        out += std::to_string(step);
        out += ',';
        out += std::to_string(vertex);
        out += ',';
        out += std::to_string(parent);
        out += ',';
        out += io::format_double(points[vertex].x);
        out += ',';
        out += io::format_double(points[vertex].y);
        out += '\n';
    };
    row(0, start, -1);
    for (const auto& ev : rec.spawn_events)
        row(ev.step, ev.vertex, static_cast<long long>(ev.parent));
    io::write_file(path, out);
}

}  // namespace hrg
