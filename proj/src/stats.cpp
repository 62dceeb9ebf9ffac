#include "hrg/stats.hpp"

#include <algorithm>

#include "hrg/io.hpp"
#include "hrg/spectral.hpp"

namespace hrg {

namespace {

// triangles through i = adjacent pairs among its neighbors
std::size_t closed_pairs(const Graph& g, std::uint32_t i) {
    std::size_t count = 0;
    for (auto* p = g.neighbors_begin(i); p != g.neighbors_end(i); ++p) {
        // intersect the (sorted) lists of i and *p, counting only k > *p
        // so each neighbor pair is seen once
        auto* a = p + 1;
        auto* a_end = g.neighbors_end(i);
        auto* b = std::upper_bound(g.neighbors_begin(*p), g.neighbors_end(*p), *p);
        auto* b_end = g.neighbors_end(*p);
        while (a != a_end && b != b_end) {
            if (*a < *b) ++a;
            else if (*b < *a) ++b;
            else {
                ++count;
                ++a;
                ++b;
            }
        }
    }
    return count;
}

}  // namespace

double local_clustering(const Graph& g, std::uint32_t i) {
    if (i >= g.num_vertices()) throw ConfigError("local_clustering: vertex out of range");
    auto d = g.degree(i);
    if (d <= 1) return 0.0;
    return 2.0 * static_cast<double>(closed_pairs(g, i)) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
}

double average_clustering(const Graph& g) {
    auto n = static_cast<std::int64_t>(g.num_vertices());
    if (n == 0) throw ConfigError("average_clustering: empty graph");
    std::vector<double> local(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i)
        local[i] = local_clustering(g, static_cast<std::uint32_t>(i));
    double sum = 0.0;
    for (double c : local) sum += c;
    return sum / static_cast<double>(n);
}

double sparsity(const Graph& g) {
    auto n = static_cast<double>(g.num_vertices());
    if (g.num_vertices() < 2) throw ConfigError("sparsity: need at least two vertices");
    return 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1.0));
}

ValencyStats valency_stats(const Graph& g) {
    if (g.num_vertices() == 0) throw ConfigError("valency_stats: empty graph");
    ValencyStats s;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        s.max = std::max(s.max, g.degree(v));
    s.avg = static_cast<double>(g.volume()) / static_cast<double>(g.num_vertices());
    return s;
}

GraphSummary summarize(const Graph& g, double spectral_tol) {
    GraphSummary s;
    s.n = g.num_vertices();
    s.edge_count = g.num_edges();
    s.lambda1 = lambda1(g, spectral_tol).lambda1;
    s.sparsity = sparsity(g);
    auto v = valency_stats(g);
    s.max_valency = v.max;
    s.avg_valency = v.avg;
    s.avg_clustering = average_clustering(g);
    return s;
}

std::string summary_csv_header() {
    return "graph,iteration,lambda1,sparsity,max_valency,avg_valency,avg_clustering";
}

std::string summary_csv_row(const std::string& graph, const std::string& iteration,
                            const GraphSummary& s) {
    std::string row = graph;
    row += ',';
    row += iteration;
    row += ',';
    row += io::format_double(s.lambda1);
    row += ',';
    row += io::format_double(s.sparsity);
    row += ',';
    row += std::to_string(s.max_valency);
    row += ',';
    row += io::format_double(s.avg_valency);
    row += ',';
    row += io::format_double(s.avg_clustering);
    return row;
}

namespace reference {

double average_clustering(const Graph& g) {
    auto n = g.num_vertices();
    if (n == 0) throw ConfigError("average_clustering: empty graph");
    double sum = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) sum += local_clustering(g, i);
    return sum / static_cast<double>(n);
}

}  // namespace reference

}  // namespace hrg
