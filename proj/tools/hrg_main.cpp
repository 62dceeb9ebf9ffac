#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "hrg/io.hpp"
#include "hrg/runner.hpp"
#include "hrg/spectral.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::string connection;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    double tol = 0.0;
    std::size_t steps = 0;
    std::size_t num_walks = 0;
    std::size_t delay = 0;
};

void add_common_options(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--seed", ov.seed, "Master seed");
    cmd->add_option("--config", ov.config_path, "JSON config file");
    cmd->add_option("--out", ov.out_dir, "Output directory");
    cmd->add_option("--iterations", ov.iterations, "Iterations for averaged experiments");
    cmd->add_option("--tol", ov.tol, "Spectral solver tolerance");
}

hrg::ExperimentConfig resolve(CLI::App* cmd, const std::string& name,
                              hrg::ExperimentConfig base, const CliOverrides& ov) {
    base.out_dir.clear();
    if (!ov.config_path.empty()) base = hrg::load_config(ov.config_path, std::move(base));
    auto given = [cmd](const std::string& opt) {
        const CLI::Option* o = cmd->get_option_no_throw(opt);
        return o != nullptr && o->count() > 0;
    };
    if (given("--seed")) base.seed = ov.seed;
    if (given("--iterations")) base.iterations = ov.iterations;
    if (given("--tol")) base.spectral_tol = ov.tol;
    if (given("--out")) base.out_dir = ov.out_dir;
    if (given("--connection")) base.connection = ov.connection;
    if (given("--steps")) {
        base.walks.steps = ov.steps;
        base.replication.steps = ov.steps;
    }
    if (given("--walks")) base.walks.num_walks = ov.num_walks;
    if (given("--delay")) base.replication.delay = ov.delay;
    if (base.out_dir.empty()) base.out_dir = "out/" + name;
    return base;
}

void print_aggregate(const std::string& name, const hrg::SummaryAggregate& a) {
    std::printf("%-2s lambda1 %.6g (sd %.3g)  sparsity %.6g  max_val %.6g  avg_val %.6g  "
                "clustering %.6g  [%zu iterations]\n",
                name.c_str(), a.lambda1_mean, a.lambda1_sd, a.sparsity_mean, a.max_valency_mean,
                a.avg_valency_mean, a.clustering_mean, a.count);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Horospherical random graph toolkit"};
    app.require_subcommand(1);

    CliOverrides ov;
    std::string run_name;

    auto* c_generate = app.add_subcommand("generate", "Generate a layered graph, write CSVs");
    auto* c_stats = app.add_subcommand("stats", "Summary statistics of one generated graph");
    auto* c_table1 = app.add_subcommand("table1", "Scenario statistics table");
    auto* c_table2 = app.add_subcommand("table2", "Random-walk spread table");
    auto* c_figure1 = app.add_subcommand("figure1", "Per-level statistic curves");
    auto* c_repwalk = app.add_subcommand("repwalk", "Replicating random walks");
    auto* c_sweep = app.add_subcommand("sweep", "Threshold-graph lambda1 sweep");
    auto* c_walk = app.add_subcommand("walk", "Single random walk trace");
    for (auto* cmd : {c_generate, c_stats, c_table1, c_table2, c_figure1, c_repwalk, c_sweep,
                      c_walk})
        add_common_options(cmd, ov);
    for (auto* cmd : {c_generate, c_stats, c_walk})
        cmd->add_option("--connection,-c", ov.connection,
                        "Connection spec: U/S/C/I, phi1..phi5, or a band file");
    for (auto* cmd : {c_table2, c_walk, c_repwalk})
        cmd->add_option("--steps", ov.steps, "Steps per walk");
    c_table2->add_option("--walks", ov.num_walks, "Number of walks per graph");
    c_repwalk->add_option("--delay", ov.delay, "Replication delay");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);  // prints the help or error text
        return rc == 0 ? 0 : 1;
    }

    try {
        if (c_generate->parsed()) {
            auto cfg = resolve(c_generate, "generate", {}, ov);
            hrg::run_generate(cfg);
            std::printf("wrote %s/points.csv and %s/edges.csv\n", cfg.out_dir.c_str(),
                        cfg.out_dir.c_str());
        } else if (c_stats->parsed()) {
            auto cfg = resolve(c_stats, "stats", {}, ov);
            auto s = hrg::run_stats(cfg);
            std::printf("%s\n%s\n", hrg::summary_csv_header().c_str(),
                        hrg::summary_csv_row(cfg.connection, "0", s).c_str());
        } else if (c_table1->parsed()) {
            auto cfg = resolve(c_table1, "table1", {}, ov);
            auto res = hrg::run_table1(cfg);
            for (std::size_t sc = 0; sc < res.names.size(); ++sc)
                print_aggregate(res.names[sc], res.agg[sc]);
            std::printf("wrote %s/table1.csv\n", cfg.out_dir.c_str());
        } else if (c_table2->parsed()) {
            auto cfg = resolve(c_table2, "table2", {}, ov);
            auto res = hrg::run_table2(cfg);
            for (std::size_t sc = 0; sc < res.names.size(); ++sc) {
                const auto& s = res.stats[sc];
                std::printf("%-2s mean_of_means %.4g (sd %.3g)  mean_of_maxes %.4g (sd %.3g)\n",
                            res.names[sc].c_str(), s.mean_of_means, s.sd_of_means,
                            s.mean_of_maxes, s.sd_of_maxes);
            }
            std::printf("wrote %s/table2.csv\n", cfg.out_dir.c_str());
        } else if (c_figure1->parsed()) {
            hrg::ExperimentConfig base;
            base.pointset.kind = "uniform";
            base.pointset.n = 200;
            auto cfg = resolve(c_figure1, "figure1", base, ov);
            hrg::run_figure1(cfg);
            std::printf("wrote %s/figure1.csv\n", cfg.out_dir.c_str());
        } else if (c_repwalk->parsed()) {
            auto cfg = resolve(c_repwalk, "repwalk", {}, ov);
            auto res = hrg::run_replicating(cfg);
            for (std::size_t sc = 0; sc < res.names.size(); ++sc)
                std::printf("%-2s replicants %zu  max spawn distance %.4g\n",
                            res.names[sc].c_str(), res.records[sc].traces.size(),
                            res.max_spawn_distance[sc]);
            std::printf("wrote %s/replication_*.csv (start vertex %u)\n", cfg.out_dir.c_str(),
                        res.start_vertex);
        } else if (c_sweep->parsed()) {
            auto cfg = resolve(c_sweep, "sweep", {}, ov);
            auto res = hrg::run_r_sweep(cfg);
            if (res.crossed)
                std::printf("crossing of lambda1(C) reference %.6g at r* = %.4f\n",
                            res.ref_lambda_c, res.r_star);
            else
                std::printf("no crossing in range (reference %.6g)\n", res.ref_lambda_c);
            std::printf("wrote %s/sweep.csv\n", cfg.out_dir.c_str());
        } else if (c_walk->parsed()) {
            auto cfg = resolve(c_walk, "walk", {}, ov);
            hrg::run_walk(cfg);
            std::printf("wrote %s/walk.csv\n", cfg.out_dir.c_str());
        }
    } catch (const hrg::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const hrg::ConvergenceError& e) {
        std::fprintf(stderr, "numerical failure: %s (best lambda1 %.6g, residual %.3g)\n",
                     e.what(), e.best.lambda1, e.best.residual);
        return 2;
    } catch (const hrg::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
