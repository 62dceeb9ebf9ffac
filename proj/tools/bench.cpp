#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "hrg/generate.hpp"
#include "hrg/runner.hpp"
#include "hrg/stats.hpp"
#include "hrg/walks.hpp"

// Timing comparison of the OpenMP kernels against their serial reference
// twins, with equality checks on the results.

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void report(const char* kernel, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-16s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", kernel,
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                equal ? "results identical" : "RESULTS DIFFER");
}

bool same_edges(const hrg::LayeredGraph& a, const hrg::LayeredGraph& b) {
    if (a.bands() != b.bands() || a.num_vertices() != b.num_vertices()) return false;
    for (std::size_t k = 1; k <= a.bands(); ++k)
        if (a.band_edges(k) != b.band_edges(k)) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;

    hrg::ExperimentConfig cfg;
    if (quick) {
        cfg.pointset.n = 1500;
        cfg.pointset.grid_nx = 30;
        cfg.pointset.grid_ny = 30;
    }
    auto points = hrg::build_points(cfg);
    auto cf = hrg::preset("U");
    const std::uint64_t seed = 7;
    std::printf("point set: %zu vertices (%s)\n\n", points.size(),
                quick ? "quick" : "full France model");

    bool all_equal = true;

    auto t0 = clock_type::now();
    auto lg_ser = hrg::reference::generate(points, cf, seed);
    double ser = ms_since(t0);
    t0 = clock_type::now();
    auto lg_par = hrg::generate(points, cf, seed);
    double par = ms_since(t0);
    bool eq = same_edges(lg_ser, lg_par);
    all_equal &= eq;
    report("generate", ser, par, eq);

    auto g = lg_par.top_layer();

    t0 = clock_type::now();
    double clus_ser = hrg::reference::average_clustering(g);
    ser = ms_since(t0);
    t0 = clock_type::now();
    double clus_par = hrg::average_clustering(g);
    par = ms_since(t0);
    eq = clus_ser == clus_par;
    all_equal &= eq;
    report("clustering", ser, par, eq);

    const std::size_t walks = quick ? 200 : 1000;
    t0 = clock_type::now();
    auto walk_ser = hrg::reference::batch_walk_stats(g, points, walks, 100, seed);
    ser = ms_since(t0);
    t0 = clock_type::now();
    auto walk_par = hrg::batch_walk_stats(g, points, walks, 100, seed);
    par = ms_since(t0);
    eq = walk_ser.mean_of_means == walk_par.mean_of_means &&
         walk_ser.sd_of_means == walk_par.sd_of_means &&
         walk_ser.mean_of_maxes == walk_par.mean_of_maxes &&
         walk_ser.sd_of_maxes == walk_par.sd_of_maxes;
    all_equal &= eq;
    report("batch walks", ser, par, eq);

    if (!all_equal) {
        std::fprintf(stderr, "\nkernel mismatch detected\n");
        return 1;
    }
    return 0;
}
