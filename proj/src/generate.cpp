#include "hrg/generate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hrg/io.hpp"
#include "hrg/rng.hpp"

namespace hrg {

namespace {

struct BucketGrid {
    double cell;
    std::size_t nx, ny;
    // cell-major lists of point indices, each list in increasing order
    std::vector<std::vector<std::uint32_t>> buckets;

    BucketGrid(const PointSet& points, double cell_size) : cell(cell_size) {
        nx = std::max<std::size_t>(1, static_cast<std::size_t>(points.width() / cell) + 1);
        ny = std::max<std::size_t>(1, static_cast<std::size_t>(points.height() / cell) + 1);
        buckets.resize(nx * ny);
        for (std::uint32_t i = 0; i < points.size(); ++i)
            buckets[index_of(points[i])].push_back(i);
    }

    std::size_t index_of(const Point& p) const {
        auto cx = std::min(nx - 1, static_cast<std::size_t>(p.x / cell));
        auto cy = std::min(ny - 1, static_cast<std::size_t>(p.y / cell));
        return cy * nx + cx;
    }

    template <class Fn>
    void for_each_nearby(const Point& p, Fn&& fn) const {
        auto cx = static_cast<long>(std::min(nx - 1, static_cast<std::size_t>(p.x / cell)));
        auto cy = static_cast<long>(std::min(ny - 1, static_cast<std::size_t>(p.y / cell)));
        for (long dy = -1; dy <= 1; ++dy) {
            long y = cy + dy;
            if (y < 0 || y >= static_cast<long>(ny)) continue;
            for (long dx = -1; dx <= 1; ++dx) {
                long x = cx + dx;
                if (x < 0 || x >= static_cast<long>(nx)) continue;
                for (std::uint32_t j : buckets[static_cast<std::size_t>(y) * nx +
                                               static_cast<std::size_t>(x)])
                    fn(j);
            }
        }
    }
};

}  // namespace

std::vector<Edge> annulus_pairs(const PointSet& points, double r_lo, double r_hi) {
    if (!(r_hi > 0.0) || r_lo < 0.0 || r_lo >= r_hi)
        throw ConfigError("annulus_pairs: need 0 <= r_lo < r_hi");
    const std::size_t n = points.size();
    const double lo2 = r_lo * r_lo;
    const double hi2 = r_hi * r_hi;
    std::vector<std::vector<std::uint32_t>> rows(n);

    auto in_annulus = [&](std::uint32_t i, std::uint32_t j) {
        double dx = points[j].x - points[i].x;
        double dy = points[j].y - points[i].y;
        double d2 = dx * dx + dy * dy;
        return d2 > lo2 && d2 <= hi2;
    };

    if (r_hi >= points.bbox_diagonal()) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j)
                if (in_annulus(i, j)) rows[i].push_back(j);
    } else {
        BucketGrid grid(points, r_hi);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::uint32_t i = 0; i < n; ++i) {
            grid.for_each_nearby(points[i], [&](std::uint32_t j) {
                if (j > i && in_annulus(i, j)) rows[i].push_back(j);
            });
            std::sort(rows[i].begin(), rows[i].end());
        }
    }

    std::vector<Edge> out;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j : rows[i]) out.emplace_back(i, j);
    return out;
}

LayeredGraph::LayeredGraph(std::size_t n, std::vector<std::vector<Edge>> bands)
    : n_(n), band_edges_(std::move(bands)) {
    if (band_edges_.empty())
        throw ConfigError("layered graph needs at least one band");
}

const std::vector<Edge>& LayeredGraph::band_edges(std::size_t k) const {
    if (k < 1 || k > band_edges_.size())
        throw ConfigError("band index out of range");
    return band_edges_[k - 1];
}

Graph LayeredGraph::layer(std::size_t k) const {
    if (k < 1 || k > band_edges_.size())
        throw ConfigError("layer index out of range");
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < k; ++b)
        edges.insert(edges.end(), band_edges_[b].begin(), band_edges_[b].end());
    return Graph::from_edge_list(n_, edges);
}

std::size_t LayeredGraph::num_edges() const {
    std::size_t total = 0;
    for (const auto& b : band_edges_) total += b.size();
    return total;
}

namespace {

// Shared inner step of both generate variants: band lookup on the squared
// distance, then one counter-based draw keyed by (i, j, band).
struct PairSampler {
    const PointSet& points;
    const std::vector<double>& probs;
    std::vector<double> radii_sq;
    double r_max_sq;
    std::uint64_t seed;

    PairSampler(const PointSet& ps, const ConnectionFunction& cf, std::uint64_t s)
        : points(ps), probs(cf.probs()), seed(s) {
        radii_sq.reserve(cf.bands());
        for (double r : cf.radii()) radii_sq.push_back(r * r);
        r_max_sq = radii_sq.back();
    }

    // band (1-based) if the pair is drawn, 0 otherwise
    std::uint32_t try_pair(std::uint32_t i, std::uint32_t j) const {
        double dx = points[j].x - points[i].x;
        double dy = points[j].y - points[i].y;
        double d2 = dx * dx + dy * dy;
        if (d2 > r_max_sq) return 0;
        auto k = static_cast<std::size_t>(
            std::lower_bound(radii_sq.begin(), radii_sq.end(), d2) - radii_sq.begin());
        auto band = static_cast<std::uint32_t>(k + 1);
        return rng::pair_uniform(seed, i, j, band) < probs[k] ? band : 0;
    }
};

LayeredGraph gather(const PointSet& points, std::size_t bands,
                    const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>& rows) {
    std::vector<std::vector<Edge>> per_band(bands);
    for (std::uint32_t i = 0; i < points.size(); ++i)
        for (auto [j, band] : rows[i]) per_band[band - 1].emplace_back(i, j);
    return LayeredGraph(points.size(), std::move(per_band));
}

}  // namespace

LayeredGraph generate(const PointSet& points, const ConnectionFunction& cf, std::uint64_t seed) {
    const std::size_t n = points.size();
    PairSampler sampler(points, cf, seed);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows(n);

    if (cf.max_radius() >= points.bbox_diagonal()) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j)
                if (auto band = sampler.try_pair(i, j)) rows[i].emplace_back(j, band);
    } else {
        BucketGrid grid(points, cf.max_radius());
#pragma omp parallel for schedule(dynamic, 16)
        for (std::uint32_t i = 0; i < n; ++i) {
            grid.for_each_nearby(points[i], [&](std::uint32_t j) {
                if (j <= i) return;
                if (auto band = sampler.try_pair(i, j)) rows[i].emplace_back(j, band);
            });
            std::sort(rows[i].begin(), rows[i].end());
        }
    }
    return gather(points, cf.bands(), rows);
}

namespace reference {

LayeredGraph generate(const PointSet& points, const ConnectionFunction& cf, std::uint64_t seed) {
    const std::size_t n = points.size();
    PairSampler sampler(points, cf, seed);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows(n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (auto band = sampler.try_pair(i, j)) rows[i].emplace_back(j, band);
    return gather(points, cf.bands(), rows);
}

}  // namespace reference

void write_edges_csv(const LayeredGraph& lg, const std::string& path) {
    struct Row {
        std::uint32_t u, v, band;
    };
    std::vector<Row> all;
    all.reserve(lg.num_edges());
    for (std::size_t k = 1; k <= lg.bands(); ++k)
        for (auto [u, v] : lg.band_edges(k))
            all.push_back({u, v, static_cast<std::uint32_t>(k)});
    std::sort(all.begin(), all.end(),
              [](const Row& a, const Row& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    std::string out = "u,v,band\n";
    for (const Row& r : all) {
        out += std::to_string(r.u);
        out += ',';
        out += std::to_string(r.v);
        out += ',';
        out += std::to_string(r.band);
        out += '\n';
    }
    io::write_file(path, out);
}

LayeredGraph read_edges_csv(const std::string& path, std::size_t n, std::size_t bands) {
    std::istringstream in(io::read_file(path));
    std::string line;
    if (!std::getline(in, line) ||
        io::split_csv(line) != std::vector<std::string>{"u", "v", "band"})
        throw ConfigError(path + ": expected header \"u,v,band\"");
    std::vector<std::vector<Edge>> per_band(bands);
    std::vector<Edge> seen;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = io::split_csv(line);
        if (cells.size() != 3)
            throw ConfigError(path + ": expected three columns per edge");
        long long u = io::parse_int(cells[0]);
        long long v = io::parse_int(cells[1]);
        long long band = io::parse_int(cells[2]);
        if (u < 0 || v < 0 || u >= static_cast<long long>(n) || v >= static_cast<long long>(n))
            throw ConfigError(path + ": edge endpoint out of range");
        if (u >= v)
            throw ConfigError(path + ": edges must satisfy u < v");
        if (band < 1 || band > static_cast<long long>(bands))
            throw ConfigError(path + ": band out of range");
        per_band[static_cast<std::size_t>(band - 1)].emplace_back(
            static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
        seen.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw ConfigError(path + ": duplicate edge");
    return LayeredGraph(n, std::move(per_band));
}

}  // namespace hrg
