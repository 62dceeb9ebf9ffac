#include "hrg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "hrg/io.hpp"
#include "hrg/rng.hpp"
#include "hrg/spectral.hpp"
#include "json.hpp"

namespace hrg {

namespace {

// derived-seed stream tags
constexpr std::uint64_t kPointsStream = 100;
constexpr std::uint64_t kGenStreamBase = 200;   // + scenario index
constexpr std::uint64_t kWalkStreamBase = 300;  // + scenario index
constexpr std::uint64_t kFigGenBase = 400;      // + function index
constexpr std::uint64_t kRepStreamBase = 500;   // + scenario index
constexpr std::uint64_t kWalkCmdStream = 700;

std::size_t gen_stream_for(const std::string& connection) {
    const auto& names = scenario_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == connection) return i;
    return names.size();
}

std::uint64_t gen_seed(const ExperimentConfig& cfg, std::size_t scenario, std::size_t iter) {
    return rng::hash3(cfg.seed, kGenStreamBase + scenario, iter);
}

std::size_t scenario_iterations(const ExperimentConfig& cfg, const std::string& name) {
    return name == "I" ? 1 : cfg.iterations;  // the I graph is deterministic
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

// out-dir setup shared by every command: points, config snapshot
PointSet prepare(const ExperimentConfig& cfg) {
    if (cfg.iterations < 1) throw ConfigError("iterations must be >= 1");
    ensure_dir(cfg.out_dir);
    auto points = build_points(cfg);
    write_points_csv(points, cfg.out_dir + "/points.csv");
    save_config(cfg, cfg.out_dir + "/config.json");
    return points;
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd r;
    if (xs.empty()) return r;
    for (double x : xs) r.mean += x;
    r.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double acc = 0.0;
        for (double x : xs) acc += (x - r.mean) * (x - r.mean);
        r.sd = std::sqrt(acc / static_cast<double>(xs.size() - 1));
    }
    return r;
}

SummaryAggregate aggregate_rows(const std::vector<GraphSummary>& rows) {
    std::vector<double> lam, spar, maxv, avgv, clus;
    for (const auto& s : rows) {
        lam.push_back(s.lambda1);
        spar.push_back(s.sparsity);
        maxv.push_back(static_cast<double>(s.max_valency));
        avgv.push_back(s.avg_valency);
        clus.push_back(s.avg_clustering);
    }
    SummaryAggregate a;
    a.count = rows.size();
    auto ms = mean_sd(lam);
    a.lambda1_mean = ms.mean;
    a.lambda1_sd = ms.sd;
    ms = mean_sd(spar);
    a.sparsity_mean = ms.mean;
    a.sparsity_sd = ms.sd;
    ms = mean_sd(maxv);
    a.max_valency_mean = ms.mean;
    a.max_valency_sd = ms.sd;
    ms = mean_sd(avgv);
    a.avg_valency_mean = ms.mean;
    a.avg_valency_sd = ms.sd;
    ms = mean_sd(clus);
    a.clustering_mean = ms.mean;
    a.clustering_sd = ms.sd;
    return a;
}

std::string aggregate_csv_row(const std::string& graph, const std::string& tag, double lam,
                              double spar, double maxv, double avgv, double clus) {
    std::string row = graph;
    row += ',';
    row += tag;
    row += ',';
    row += io::format_double(lam);
    row += ',';
    row += io::format_double(spar);
    row += ',';
    row += io::format_double(maxv);
    row += ',';
    row += io::format_double(avgv);
    row += ',';
    row += io::format_double(clus);
    return row;
}

}  // namespace

std::vector<CitySpec> default_france_cities() {
    return {
        {"paris", {4.4, 5.95}, 12.8, 0.25},
        {"toulouse", {3.85, 1.2}, 1.45, 0.25},
        {"bordeaux", {2.6, 2.3}, 1.25, 0.25},
        {"lyon", {5.95, 3.15}, 2.3, 0.25},
        {"strasbourg", {7.7, 5.7}, 0.85, 0.25},
        {"nantes", {2.0, 4.45}, 1.0, 0.25},
        {"lille", {4.85, 7.55}, 1.2, 0.25},
        {"cote_azur", {6.75, 1.0}, 3.3, 0.25},
    };
}

PointSet build_points(const ExperimentConfig& cfg) {
    const auto& ps = cfg.pointset;
    std::uint64_t pseed = rng::derive(cfg.seed, kPointsStream);
    if (ps.kind == "uniform")
        return sample_uniform(ps.n, ps.width, ps.height, pseed);
    if (ps.kind == "grid")
        return make_grid(ps.grid_nx, ps.grid_ny, ps.width, ps.height);
    if (ps.kind == "france") {
        auto cities =
            ps.cities_path.empty() ? default_france_cities() : load_city_config(ps.cities_path);
        FranceParams params;
        params.grid_nx = ps.grid_nx;
        params.grid_ny = ps.grid_ny;
        params.total_n = ps.n;
        params.width = ps.width;
        params.height = ps.height;
        return france_model(cities, params, pseed);
    }
    if (ps.kind == "file")
        return read_points_csv(ps.file_path);
    throw ConfigError("unknown pointset kind: " + ps.kind);
}

std::uint32_t nearest_vertex(const PointSet& points, const Point& target) {
    std::uint32_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < points.size(); ++i) {
        double dx = points[i].x - target.x;
        double dy = points[i].y - target.y;
        double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    try {
        ExperimentConfig cfg = std::move(base);
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("iterations")) cfg.iterations = j["iterations"].get<std::size_t>();
        if (j.contains("spectral_tol")) cfg.spectral_tol = j["spectral_tol"].get<double>();
        if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("connection")) cfg.connection = j["connection"].get<std::string>();
        if (j.contains("pointset")) {
            const auto& p = j["pointset"];
            if (p.contains("kind")) cfg.pointset.kind = p["kind"].get<std::string>();
            if (p.contains("n")) cfg.pointset.n = p["n"].get<std::size_t>();
            if (p.contains("width")) cfg.pointset.width = p["width"].get<double>();
            if (p.contains("height")) cfg.pointset.height = p["height"].get<double>();
            if (p.contains("grid_nx")) cfg.pointset.grid_nx = p["grid_nx"].get<std::size_t>();
            if (p.contains("grid_ny")) cfg.pointset.grid_ny = p["grid_ny"].get<std::size_t>();
            if (p.contains("cities")) cfg.pointset.cities_path = p["cities"].get<std::string>();
            if (p.contains("file")) cfg.pointset.file_path = p["file"].get<std::string>();
        }
        if (j.contains("walks")) {
            const auto& w = j["walks"];
            if (w.contains("num_walks")) cfg.walks.num_walks = w["num_walks"].get<std::size_t>();
            if (w.contains("steps")) cfg.walks.steps = w["steps"].get<std::size_t>();
        }
        if (j.contains("replication")) {
            const auto& r = j["replication"];
            if (r.contains("steps")) cfg.replication.steps = r["steps"].get<std::size_t>();
            if (r.contains("delay")) cfg.replication.delay = r["delay"].get<std::size_t>();
            if (r.contains("start")) {
                const auto& s = r["start"];
                if (!s.is_array() || s.size() != 2)
                    throw ConfigError("replication.start must be [x, y]");
                cfg.replication.start = {s[0].get<double>(), s[1].get<double>()};
            }
        }
        if (j.contains("sweep")) {
            const auto& s = j["sweep"];
            if (s.contains("count")) cfg.sweep.count = s["count"].get<std::size_t>();
            if (s.contains("r_min")) cfg.sweep.r_min = s["r_min"].get<double>();
            if (s.contains("r_max")) cfg.sweep.r_max = s["r_max"].get<double>();
        }
        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void save_config(const ExperimentConfig& cfg, const std::string& path) {
    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["iterations"] = cfg.iterations;
    j["spectral_tol"] = cfg.spectral_tol;
    j["out_dir"] = cfg.out_dir;
    j["connection"] = cfg.connection;
    j["pointset"] = {{"kind", cfg.pointset.kind},
                     {"n", cfg.pointset.n},
                     {"width", cfg.pointset.width},
                     {"height", cfg.pointset.height},
                     {"grid_nx", cfg.pointset.grid_nx},
                     {"grid_ny", cfg.pointset.grid_ny}};
    if (!cfg.pointset.cities_path.empty()) j["pointset"]["cities"] = cfg.pointset.cities_path;
    if (!cfg.pointset.file_path.empty()) j["pointset"]["file"] = cfg.pointset.file_path;
    j["walks"] = {{"num_walks", cfg.walks.num_walks}, {"steps", cfg.walks.steps}};
    j["replication"] = {{"steps", cfg.replication.steps},
                        {"delay", cfg.replication.delay},
                        {"start", {cfg.replication.start.x, cfg.replication.start.y}}};
    j["sweep"] = {{"count", cfg.sweep.count},
                  {"r_min", cfg.sweep.r_min},
                  {"r_max", cfg.sweep.r_max}};
    io::write_file(path, j.dump(2) + "\n");
}

Table1Result run_table1(const ExperimentConfig& cfg) {
    auto points = prepare(cfg);
    Table1Result res;
    res.names = scenario_names();
    res.rows.resize(res.names.size());
    res.failed.resize(res.names.size());
    for (std::size_t sc = 0; sc < res.names.size(); ++sc) {
        auto cf = preset(res.names[sc]);
        std::size_t iters = scenario_iterations(cfg, res.names[sc]);
        for (std::size_t it = 0; it < iters; ++it) {
            try {
                auto g = generate(points, cf, gen_seed(cfg, sc, it)).top_layer();
                if (!is_connected(g))
                    throw ConfigError("generated graph is disconnected");
                res.rows[sc].push_back(summarize(g, cfg.spectral_tol));
            } catch (const std::exception& e) {
                res.failed[sc].push_back(it);
                std::fprintf(stderr, "table1: %s iteration %zu failed: %s\n",
                             res.names[sc].c_str(), it, e.what());
            }
        }
        res.agg.push_back(aggregate_rows(res.rows[sc]));
    }

    std::string csv = summary_csv_header() + "\n";
    for (std::size_t sc = 0; sc < res.names.size(); ++sc) {
        std::size_t iters = scenario_iterations(cfg, res.names[sc]);
        std::size_t next = 0;
        for (std::size_t it = 0; it < iters; ++it) {
            if (std::find(res.failed[sc].begin(), res.failed[sc].end(), it) !=
                res.failed[sc].end())
                continue;
            csv += summary_csv_row(res.names[sc], std::to_string(it), res.rows[sc][next++]);
            csv += '\n';
        }
        const auto& a = res.agg[sc];
        csv += aggregate_csv_row(res.names[sc], "mean", a.lambda1_mean, a.sparsity_mean,
                                 a.max_valency_mean, a.avg_valency_mean, a.clustering_mean);
        csv += '\n';
        csv += aggregate_csv_row(res.names[sc], "sd", a.lambda1_sd, a.sparsity_sd,
                                 a.max_valency_sd, a.avg_valency_sd, a.clustering_sd);
        csv += '\n';
    }
    io::write_file(cfg.out_dir + "/table1.csv", csv);
    return res;
}

Table2Result run_table2(const ExperimentConfig& cfg) {
    auto points = prepare(cfg);
    Table2Result res;
    res.names = scenario_names();
    for (std::size_t sc = 0; sc < res.names.size(); ++sc) {
        auto g = generate(points, preset(res.names[sc]), gen_seed(cfg, sc, 0)).top_layer();
        if (!is_connected(g))
            throw ConfigError("table2: graph " + res.names[sc] + " is disconnected");
        res.stats.push_back(batch_walk_stats(g, points, cfg.walks.num_walks, cfg.walks.steps,
                                             rng::hash3(cfg.seed, kWalkStreamBase + sc, 0)));
    }
    std::string csv = "graph,mean_of_means,sd_of_means,mean_of_maxes,sd_of_maxes\n";
    for (std::size_t sc = 0; sc < res.names.size(); ++sc) {
        const auto& s = res.stats[sc];
        csv += res.names[sc];
        csv += ',';
        csv += io::format_double(s.mean_of_means);
        csv += ',';
        csv += io::format_double(s.sd_of_means);
        csv += ',';
        csv += io::format_double(s.mean_of_maxes);
        csv += ',';
        csv += io::format_double(s.sd_of_maxes);
        csv += '\n';
    }
    io::write_file(cfg.out_dir + "/table2.csv", csv);
    return res;
}

Figure1Result run_figure1(const ExperimentConfig& cfg) {
    auto points = prepare(cfg);
    auto fns = section51_functions();
    Figure1Result res;
    for (std::size_t f = 0; f < fns.size(); ++f) {
        res.functions.push_back("phi" + std::to_string(f + 1));
        std::size_t bands = fns[f].bands();
        // per level, per statistic, one value per iteration
        std::vector<std::vector<GraphSummary>> level_rows(bands);
        std::vector<std::size_t> connected_count(bands, 0);
        for (std::size_t it = 0; it < cfg.iterations; ++it) {
            auto lg = generate(points, fns[f], rng::hash3(cfg.seed, kFigGenBase + f, it));
            for (std::size_t k = 1; k <= bands; ++k) {
                auto g = lg.layer(k);
                GraphSummary s;
                s.n = g.num_vertices();
                s.edge_count = g.num_edges();
                s.sparsity = sparsity(g);
                auto vs = valency_stats(g);
                s.max_valency = vs.max;
                s.avg_valency = vs.avg;
                s.avg_clustering = average_clustering(g);
                if (is_connected(g)) {
                    s.lambda1 = lambda1(g, cfg.spectral_tol).lambda1;
                    ++connected_count[k - 1];
                } else {
                    s.lambda1 = 0.0;  // flagged via connected_count
                }
                level_rows[k - 1].push_back(s);
            }
        }
        std::vector<Figure1Level> levels(bands);
        for (std::size_t k = 0; k < bands; ++k) {
            levels[k].r = fns[f].radii()[k];
            levels[k].agg = aggregate_rows(level_rows[k]);
            levels[k].connected_count = connected_count[k];
        }
        res.levels.push_back(std::move(levels));
    }

    std::string csv =
        "function,level,r,lambda1_mean,lambda1_sd,sparsity_mean,sparsity_sd,"
        "max_valency_mean,max_valency_sd,avg_valency_mean,avg_valency_sd,"
        "clustering_mean,clustering_sd,connected_count,iterations\n";
    for (std::size_t f = 0; f < res.functions.size(); ++f) {
        for (std::size_t k = 0; k < res.levels[f].size(); ++k) {
            const auto& lv = res.levels[f][k];
            csv += res.functions[f];
            csv += ',';
            csv += std::to_string(k + 1);
            csv += ',';
            csv += io::format_double(lv.r);
            csv += ',';
            csv += io::format_double(lv.agg.lambda1_mean);
            csv += ',';
            csv += io::format_double(lv.agg.lambda1_sd);
            csv += ',';
            csv += io::format_double(lv.agg.sparsity_mean);
            csv += ',';
            csv += io::format_double(lv.agg.sparsity_sd);
            csv += ',';
            csv += io::format_double(lv.agg.max_valency_mean);
            csv += ',';
            csv += io::format_double(lv.agg.max_valency_sd);
            csv += ',';
            csv += io::format_double(lv.agg.avg_valency_mean);
            csv += ',';
            csv += io::format_double(lv.agg.avg_valency_sd);
            csv += ',';
            csv += io::format_double(lv.agg.clustering_mean);
            csv += ',';
            csv += io::format_double(lv.agg.clustering_sd);
            csv += ',';
            csv += std::to_string(lv.connected_count);
            csv += ',';
            csv += std::to_string(cfg.iterations);
            csv += '\n';
        }
    }
    io::write_file(cfg.out_dir + "/figure1.csv", csv);
    return res;
}

RepwalkResult run_replicating(const ExperimentConfig& cfg) {
    auto points = prepare(cfg);
    RepwalkResult res;
    res.names = scenario_names();
    res.start_vertex = nearest_vertex(points, cfg.replication.start);
    for (std::size_t sc = 0; sc < res.names.size(); ++sc) {
        auto g = generate(points, preset(res.names[sc]), gen_seed(cfg, sc, 0)).top_layer();
        if (!is_connected(g))
            throw ConfigError("repwalk: graph " + res.names[sc] + " is disconnected");
        auto rec = replicating_walk(g, res.start_vertex, cfg.replication.steps,
                                    cfg.replication.delay,
                                    rng::hash3(cfg.seed, kRepStreamBase + sc, 0));
        write_replication_csv(rec, res.start_vertex, points,
                              cfg.out_dir + "/replication_" + res.names[sc] + ".csv");
        double far = 0.0;
        for (const auto& ev : rec.spawn_events)
            far = std::max(far, distance(points[res.start_vertex], points[ev.vertex]));
        res.max_spawn_distance.push_back(far);
        res.records.push_back(std::move(rec));
    }
    return res;
}

SweepResult run_r_sweep(const ExperimentConfig& cfg, const Table1Result* table1) {
    auto points = prepare(cfg);
    SweepResult res;

    double refs[3];
    if (table1 && table1->agg.size() >= 3) {
        refs[0] = table1->agg[0].lambda1_mean;
        refs[1] = table1->agg[1].lambda1_mean;
        refs[2] = table1->agg[2].lambda1_mean;
    } else {
        // same graphs as run_table1 (same derived seeds), lambda only
        for (std::size_t sc = 0; sc < 3; ++sc) {
            auto cf = preset(scenario_names()[sc]);
            std::vector<double> lams;
            for (std::size_t it = 0; it < cfg.iterations; ++it) {
                try {
                    auto g = generate(points, cf, gen_seed(cfg, sc, it)).top_layer();
                    if (!is_connected(g))
                        throw ConfigError("generated graph is disconnected");
                    lams.push_back(lambda1(g, cfg.spectral_tol).lambda1);
                } catch (const std::exception& e) {
                    std::fprintf(stderr, "sweep: reference %s iteration %zu failed: %s\n",
                                 scenario_names()[sc].c_str(), it, e.what());
                }
            }
            if (lams.empty())
                throw ConfigError("sweep: no reference lambda for " + scenario_names()[sc]);
            refs[sc] = mean_sd(lams).mean;
        }
    }
    res.ref_lambda_u = refs[0];
    res.ref_lambda_s = refs[1];
    res.ref_lambda_c = refs[2];

    if (cfg.sweep.count < 1 || !(cfg.sweep.r_max > cfg.sweep.r_min) || !(cfg.sweep.r_min >= 0))
        throw ConfigError("sweep: need r_max > r_min >= 0 and count >= 1");
    for (std::size_t i = 1; i <= cfg.sweep.count; ++i) {
        double r = cfg.sweep.r_min + static_cast<double>(i) * (cfg.sweep.r_max - cfg.sweep.r_min) /
                                         static_cast<double>(cfg.sweep.count);
        ConnectionFunction cf({r}, {1.0});
        auto g = generate(points, cf, cfg.seed).top_layer();  // p = 1: seed-independent
        bool conn = is_connected(g);
        double lam = conn ? lambda1(g, cfg.spectral_tol).lambda1 : 0.0;
        res.r.push_back(r);
        res.lambda1.push_back(lam);
        res.connected.push_back(conn ? 1 : 0);
    }

    const double ref = res.ref_lambda_c;
    for (std::size_t i = 0; i < res.r.size(); ++i) {
        if (res.lambda1[i] < ref) continue;
        res.crossed = true;
        if (i == 0) {
            res.r_star = res.r[0];
        } else {
            double l0 = res.lambda1[i - 1], l1 = res.lambda1[i];
            res.r_star = res.r[i - 1] + (ref - l0) * (res.r[i] - res.r[i - 1]) / (l1 - l0);
        }
        break;
    }

    std::string csv = "r,lambda1,connected\n";
    for (std::size_t i = 0; i < res.r.size(); ++i) {
        csv += io::format_double(res.r[i]);
        csv += ',';
        csv += io::format_double(res.lambda1[i]);
        csv += ',';
        csv += res.connected[i] ? '1' : '0';
        csv += '\n';
    }
    io::write_file(cfg.out_dir + "/sweep.csv", csv);

    nlohmann::ordered_json j;
    j["crossed"] = res.crossed;
    if (res.crossed) j["r_star"] = res.r_star;
    j["ref_lambda_U"] = res.ref_lambda_u;
    j["ref_lambda_S"] = res.ref_lambda_s;
    j["ref_lambda_C"] = res.ref_lambda_c;
    io::write_file(cfg.out_dir + "/sweep_report.json", j.dump(2) + "\n");
    return res;
}

void run_generate(const ExperimentConfig& cfg) {
    auto points = prepare(cfg);
    auto cf = resolve_phi(cfg.connection);
    auto lg = generate(points, cf,
                       rng::hash3(cfg.seed, kGenStreamBase + gen_stream_for(cfg.connection), 0));
    write_edges_csv(lg, cfg.out_dir + "/edges.csv");
}

GraphSummary run_stats(const ExperimentConfig& cfg) {
    auto points = prepare(cfg);
    auto cf = resolve_phi(cfg.connection);
    auto g = generate(points, cf,
                      rng::hash3(cfg.seed, kGenStreamBase + gen_stream_for(cfg.connection), 0))
                 .top_layer();
    if (!is_connected(g)) throw ConfigError("stats: generated graph is disconnected");
    auto rep = lambda1(g, cfg.spectral_tol);
    GraphSummary s;
    s.n = g.num_vertices();
    s.edge_count = g.num_edges();
    s.lambda1 = rep.lambda1;
    s.sparsity = sparsity(g);
    auto vs = valency_stats(g);
    s.max_valency = vs.max;
    s.avg_valency = vs.avg;
    s.avg_clustering = average_clustering(g);
    io::write_file(cfg.out_dir + "/summary.csv",
                   summary_csv_header() + "\n" + summary_csv_row(cfg.connection, "0", s) + "\n");
    io::write_file(cfg.out_dir + "/spectral.json", to_json(rep) + "\n");
    return s;
}

void run_walk(const ExperimentConfig& cfg) {
    auto points = prepare(cfg);
    auto cf = resolve_phi(cfg.connection);
    auto g = generate(points, cf,
                      rng::hash3(cfg.seed, kGenStreamBase + gen_stream_for(cfg.connection), 0))
                 .top_layer();
    if (!is_connected(g)) throw ConfigError("walk: generated graph is disconnected");
    auto start = nearest_vertex(points, cfg.replication.start);
    auto trace = simple_walk(g, start, cfg.walks.steps, rng::hash3(cfg.seed, kWalkCmdStream, 0));
    write_walk_csv(trace, points, cfg.out_dir + "/walk.csv");
}

}  // namespace hrg
