#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrg/graph.hpp"

namespace hrg {

struct GraphSummary {
    std::size_t n = 0;
    std::size_t edge_count = 0;
    double lambda1 = 0.0;
    double sparsity = 0.0;
    std::size_t max_valency = 0;
    double avg_valency = 0.0;
    double avg_clustering = 0.0;
};

/// Fraction of adjacent neighbor pairs of i, 0 when deg(i) <= 1.
double local_clustering(const Graph& g, std::uint32_t i);

/// Mean of local_clustering over all vertices.
double average_clustering(const Graph& g);

/// Edge density 2|E| / (n(n-1)); requires n >= 2.
double sparsity(const Graph& g);

struct ValencyStats {
    std::size_t max = 0;
    double avg = 0.0;
};

ValencyStats valency_stats(const Graph& g);

/// All summary fields including lambda1 (iterative solve); g must be connected.
GraphSummary summarize(const Graph& g, double spectral_tol = 1e-8);

/// Header and row for the summary CSV
/// "graph,iteration,lambda1,sparsity,max_valency,avg_valency,avg_clustering".
std::string summary_csv_header();
std::string summary_csv_row(const std::string& graph, const std::string& iteration,
                            const GraphSummary& s);

namespace reference {

/// Serial twin of hrg::average_clustering.
double average_clustering(const Graph& g);

}  // namespace reference

}  // namespace hrg
