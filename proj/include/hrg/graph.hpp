#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hrg {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Undirected simple graph in CSR form; neighbor lists are sorted.
class Graph {
public:
    Graph() = default;

    /// Edges must have u != v; duplicates (in either orientation) are rejected.
    static Graph from_edge_list(std::size_t n, const std::vector<Edge>& edges);

    std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const { return adjacency_.size() / 2; }

    std::size_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Sorted neighbor range of v.
    const std::uint32_t* neighbors_begin(std::uint32_t v) const {
        return adjacency_.data() + offsets_[v];
    }
    const std::uint32_t* neighbors_end(std::uint32_t v) const {
        return adjacency_.data() + offsets_[v + 1];
    }

    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    /// Sum of all degrees (= 2 * num_edges()).
    std::size_t volume() const { return adjacency_.size(); }

    /// Edge list sorted by (min endpoint, max endpoint).
    std::vector<Edge> edge_list() const;

    const std::vector<std::size_t>& offsets() const { return offsets_; }
    const std::vector<std::uint32_t>& adjacency() const { return adjacency_; }

private:
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> adjacency_;
};

/// BFS connectivity; the one-vertex graph counts as connected, the empty
/// graph does not.
bool is_connected(const Graph& g);

/// Two-coloring BFS over each component.
bool is_bipartite(const Graph& g);

}  // namespace hrg
