#include "hrg/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "hrg/io.hpp"

namespace hrg {

Graph Graph::from_edge_list(std::size_t n, const std::vector<Edge>& edges) {
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw ConfigError("edge endpoint out of range");
        if (u == v)
            throw ConfigError("self-loops are not allowed");
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i)
        g.offsets_[i + 1] += g.offsets_[i];
    g.adjacency_.resize(2 * edges.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.adjacency_[cursor[u]++] = v;
        g.adjacency_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto* b = g.adjacency_.data() + g.offsets_[v];
        auto* e = g.adjacency_.data() + g.offsets_[v + 1];
        std::sort(b, e);
        if (std::adjacent_find(b, e) != e)
            throw ConfigError("duplicate edge in edge list");
    }
    return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    auto* b = neighbors_begin(u);
    auto* e = neighbors_end(u);
    return std::binary_search(b, e, v);
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> edges;
    edges.reserve(num_edges());
    for (std::uint32_t u = 0; u < num_vertices(); ++u)
        for (auto* p = neighbors_begin(u); p != neighbors_end(u); ++p)
            if (*p > u)
                edges.emplace_back(u, *p);
    return edges;
}

bool is_connected(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> stack = {0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        for (auto* p = g.neighbors_begin(v); p != g.neighbors_end(v); ++p) {
            if (!seen[*p]) {
                seen[*p] = 1;
                ++count;
                stack.push_back(*p);
            }
        }
    }
    return count == n;
}

bool is_bipartite(const Graph& g) {
    std::size_t n = g.num_vertices();
    std::vector<signed char> color(n, -1);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (auto* p = g.neighbors_begin(v); p != g.neighbors_end(v); ++p) {
                if (color[*p] == -1) {
                    color[*p] = static_cast<signed char>(1 - color[v]);
                    stack.push_back(*p);
                } else if (color[*p] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace hrg
