#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrg/connection.hpp"
#include "hrg/graph.hpp"
#include "hrg/points.hpp"

namespace hrg {

/// All unordered pairs (i,j), i < j, with r_lo < dist(p_i,p_j) <= r_hi,
/// sorted by (i,j). Comparisons are done on squared distances.
std::vector<Edge> annulus_pairs(const PointSet& points, double r_lo, double r_hi);

// Nested graph sequence produced by one generation run: band k holds the
// edges drawn at distances in (r_{k-1}, r_k], and layer k is the union of
// bands 1..k. Bands and layers are 1-based.
class LayeredGraph {
public:
    LayeredGraph(std::size_t n, std::vector<std::vector<Edge>> bands);

    std::size_t num_vertices() const { return n_; }
    std::size_t bands() const { return band_edges_.size(); }

    const std::vector<Edge>& band_edges(std::size_t k) const;

    /// Union of bands 1..k as a Graph.
    Graph layer(std::size_t k) const;
    Graph top_layer() const { return layer(bands()); }

    std::size_t num_edges() const;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<Edge>> band_edges_;
};

/// Draws the layered graph over the point set: pair {i,j} in band k is an
/// edge iff rng::pair_uniform(seed, i, j, k) < p_k. Deterministic in
/// (points, cf, seed); parallelized over source vertices.
LayeredGraph generate(const PointSet& points, const ConnectionFunction& cf, std::uint64_t seed);

/// CSV "u,v,band" sorted by (u,v), band 1-based.
void write_edges_csv(const LayeredGraph& lg, const std::string& path);
LayeredGraph read_edges_csv(const std::string& path, std::size_t n, std::size_t bands);

namespace reference {

/// Serial twin of hrg::generate (plain O(n^2) scan, no spatial grid);
/// must produce identical output.
LayeredGraph generate(const PointSet& points, const ConnectionFunction& cf, std::uint64_t seed);

}  // namespace reference

}  // namespace hrg
