#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hrg/generate.hpp"
#include "hrg/points.hpp"
#include "hrg/stats.hpp"
#include "hrg/walks.hpp"

namespace hrg {

struct PointSetSpec {
    std::string kind = "france";  // uniform | grid | france | file
    std::size_t n = 6000;         // total count (uniform and france)
    double width = 8.0;
    double height = 8.0;
    std::size_t grid_nx = 60;
    std::size_t grid_ny = 60;
    std::string cities_path;  // empty = built-in city defaults
    std::string file_path;    // kind == "file"
};

struct WalkConfig {
    std::size_t num_walks = 100;
    std::size_t steps = 100;
};

struct ReplicationConfig {
    std::size_t steps = 100;
    std::size_t delay = 10;
    Point start{4.85, 7.55};  // default: the Lille center of the city config
};

struct SweepConfig {
    std::size_t count = 40;
    double r_min = 0.15;  // exclusive; the sweep covers (r_min, r_max]
    double r_max = 4.0;
};

struct ExperimentConfig {
    std::uint64_t seed = 42;
    std::size_t iterations = 20;
    double spectral_tol = 1e-8;
    std::string out_dir = "out";
    PointSetSpec pointset;
    std::string connection = "U";  // preset letter, phi1..phi5, or file path
    WalkConfig walks;
    ReplicationConfig replication;
    SweepConfig sweep;
};

/// Parses a JSON config, overriding fields of `base` that appear in the file.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});
void save_config(const ExperimentConfig& cfg, const std::string& path);

std::vector<CitySpec> default_france_cities();

/// Builds the configured point set (seeded streams derive from cfg.seed).
PointSet build_points(const ExperimentConfig& cfg);

/// Vertex whose point is nearest to the coordinate (first index on ties).
std::uint32_t nearest_vertex(const PointSet& points, const Point& target);

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"U", "S", "C", "I"};
    return names;
}

struct SummaryAggregate {
    double lambda1_mean = 0, lambda1_sd = 0;
    double sparsity_mean = 0, sparsity_sd = 0;
    double max_valency_mean = 0, max_valency_sd = 0;
    double avg_valency_mean = 0, avg_valency_sd = 0;
    double clustering_mean = 0, clustering_sd = 0;
    std::size_t count = 0;
};

struct Table1Result {
    std::vector<std::string> names;                 // U, S, C, I
    std::vector<std::vector<GraphSummary>> rows;    // successful iterations, in order
    std::vector<std::vector<std::size_t>> failed;   // failed iteration indices
    std::vector<SummaryAggregate> agg;
};

/// Writes points.csv, table1.csv and the config snapshot into cfg.out_dir.
Table1Result run_table1(const ExperimentConfig& cfg);

struct Table2Result {
    std::vector<std::string> names;
    std::vector<BatchWalkStats> stats;
};

Table2Result run_table2(const ExperimentConfig& cfg);

struct Figure1Level {
    double r = 0.0;
    SummaryAggregate agg;
    std::size_t connected_count = 0;  // iterations whose layer was connected
};

struct Figure1Result {
    std::vector<std::string> functions;              // phi1..phi5
    std::vector<std::vector<Figure1Level>> levels;   // per function, per band
};

Figure1Result run_figure1(const ExperimentConfig& cfg);

struct RepwalkResult {
    std::vector<std::string> names;
    std::uint32_t start_vertex = 0;
    std::vector<ReplicationRecord> records;
    std::vector<double> max_spawn_distance;  // from the start point
};

RepwalkResult run_replicating(const ExperimentConfig& cfg);

struct SweepResult {
    std::vector<double> r;
    std::vector<double> lambda1;
    std::vector<char> connected;
    double ref_lambda_u = 0, ref_lambda_s = 0, ref_lambda_c = 0;
    bool crossed = false;
    double r_star = 0.0;  // where the curve first reaches ref_lambda_c
};

/// Pass the Table 1 result to reuse its reference means; otherwise the
/// U/S/C lambda references are recomputed from the same derived seeds.
SweepResult run_r_sweep(const ExperimentConfig& cfg, const Table1Result* table1 = nullptr);

/// generate/stats/walk command bodies (single connection spec).
void run_generate(const ExperimentConfig& cfg);
GraphSummary run_stats(const ExperimentConfig& cfg);
void run_walk(const ExperimentConfig& cfg);

}  // namespace hrg
