#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "hrg/io.hpp"
#include "hrg/points.hpp"

#ifdef HRG_HAVE_GMP
#include <gmp.h>
#endif

using namespace hrg;

TEST_CASE("distance basics") {
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(distance({1, 1}, {1, 1}) == 0.0);
}

TEST_CASE("PointSet validation and diagonal") {
    PointSet ps({{0, 0}, {8, 8}}, 8, 8);
    CHECK(ps.size() == 2);
    CHECK(ps.bbox_diagonal() == doctest::Approx(8 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(PointSet({{9, 0}}, 8, 8), ConfigError);
    CHECK_THROWS_AS(PointSet({{0, -0.1}}, 8, 8), ConfigError);
    CHECK_THROWS_AS(PointSet({}, 8, 8), ConfigError);
    CHECK_THROWS_AS(PointSet({{0, 0}}, 0, 8), ConfigError);
}

TEST_CASE("sample_uniform is deterministic and in the box") {
    PointSet a = sample_uniform(500, 8, 8, 42);
    PointSet b = sample_uniform(500, 8, 8, 42);
    PointSet c = sample_uniform(500, 8, 8, 43);
    REQUIRE(a.size() == 500);
    bool same = true, differs = false;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < 500; ++i) {
        CHECK(a[i].x >= 0.0);
        CHECK(a[i].x <= 8.0);
        CHECK(a[i].y >= 0.0);
        CHECK(a[i].y <= 8.0);
        same = same && a[i].x == b[i].x && a[i].y == b[i].y;
        differs = differs || a[i].x != c[i].x;
        sx += a[i].x;
        sy += a[i].y;
    }
    CHECK(same);
    CHECK(differs);
    // sample mean within 5 sigma of 4 (sd of the mean = 8/sqrt(12*500))
    double sd_mean = 8.0 / std::sqrt(12.0 * 500);
    CHECK(std::abs(sx / 500 - 4.0) < 5 * sd_mean);
    CHECK(std::abs(sy / 500 - 4.0) < 5 * sd_mean);
}

TEST_CASE("make_grid layout: row-major, x fastest, cell centers") {
    PointSet g = make_grid(60, 60, 8, 8);
    REQUIRE(g.size() == 3600);
    CHECK(g[0].x == doctest::Approx(0.5 * 8.0 / 60).epsilon(1e-15));
    CHECK(g[0].y == doctest::Approx(0.5 * 8.0 / 60).epsilon(1e-15));
    CHECK(g[1].x == doctest::Approx(1.5 * 8.0 / 60).epsilon(1e-15));
    CHECK(g[1].y == g[0].y);
    CHECK(g[60].x == g[0].x);
    CHECK(g[60].y == doctest::Approx(1.5 * 8.0 / 60).epsilon(1e-15));
    // mesh spacing: neighbors along a row are exactly width/nx apart
    double mesh = distance(g[0], g[1]);
    CHECK(mesh == doctest::Approx(8.0 / 60).epsilon(1e-15));
    CHECK(mesh < 0.15);
}

TEST_CASE("largest_remainder_allocation frozen cases") {
    CHECK(largest_remainder_allocation({1, 1, 1}, 7) == std::vector<std::size_t>{3, 2, 2});
    CHECK(largest_remainder_allocation({2, 1}, 4) == std::vector<std::size_t>{3, 1});
    CHECK(largest_remainder_allocation({1}, 5) == std::vector<std::size_t>{5});
    // the default city weights at n = 2400, checked by hand with exact fractions
    std::vector<double> w{12.8, 1.45, 1.25, 2.3, 0.85, 1.0, 1.2, 3.3};
    CHECK(largest_remainder_allocation(w, 2400) ==
          std::vector<std::size_t>{1272, 144, 124, 229, 85, 99, 119, 328});
}

TEST_CASE("largest_remainder_allocation sums to n") {
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        std::vector<double> w;
        std::size_t k = 1 + trial % 9;
        for (std::size_t i = 0; i < k; ++i)
            w.push_back(0.05 + (static_cast<double>((trial * 31 + i * 17) % 97)) / 10.0);
        std::size_t n = 1 + (trial * 131) % 5000;
        auto shares = largest_remainder_allocation(w, n);
        REQUIRE(shares.size() == k);
        CHECK(std::accumulate(shares.begin(), shares.end(), std::size_t{0}) == n);
    }
}

#ifdef HRG_HAVE_GMP
namespace {

// Exact rational largest-remainder reference using GMP integers. Weights are
// scaled to integers first so quotas are exact fractions.
std::vector<std::size_t> lr_exact(const std::vector<double>& weights, std::size_t n) {
    const long scale = 1000000;
    std::vector<long> iw;
    long total = 0;
    for (double w : weights) {
        long v = std::lround(w * scale);
        iw.push_back(v);
        total += v;
    }
    std::size_t k = weights.size();
    std::vector<std::size_t> shares(k);
    std::vector<std::size_t> order(k);
    // floor(n*iw/total) and remainder n*iw mod total
    std::vector<unsigned long> rem(k);
    std::size_t assigned = 0;
    mpz_t num, q, r, tot;
    mpz_inits(num, q, r, tot, nullptr);
    mpz_set_ui(tot, static_cast<unsigned long>(total));
    for (std::size_t i = 0; i < k; ++i) {
        mpz_set_ui(num, static_cast<unsigned long>(n));
        mpz_mul_ui(num, num, static_cast<unsigned long>(iw[i]));
        mpz_fdiv_qr(q, r, num, tot);
        shares[i] = mpz_get_ui(q);
        rem[i] = mpz_get_ui(r);
        assigned += shares[i];
        order[i] = i;
    }
    mpz_clears(num, q, r, tot, nullptr);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
    for (std::size_t j = 0; assigned < n; ++j, ++assigned) ++shares[order[j]];
    return shares;
}

}  // namespace

TEST_CASE("largest_remainder_allocation agrees with an exact rational oracle") {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        std::vector<double> w;
        std::size_t k = 2 + trial % 7;
        for (std::size_t i = 0; i < k; ++i)
            w.push_back(((trial * 37 + i * 13) % 50 + 1) / 4.0);
        std::size_t n = 10 + (trial * 977) % 4000;
        CHECK(largest_remainder_allocation(w, n) == lr_exact(w, n));
    }
    std::vector<double> france{12.8, 1.45, 1.25, 2.3, 0.85, 1.0, 1.2, 3.3};
    CHECK(largest_remainder_allocation(france, 2400) == lr_exact(france, 2400));
}
#endif

TEST_CASE("sample_city_mixture stays in the box and clusters at centers") {
    std::vector<CitySpec> cities{{"a", {2, 2}, 3.0, 0.25}, {"b", {6, 6}, 1.0, 0.25}};
    PointSet ps = sample_city_mixture(cities, 400, 8, 8, 7);
    REQUIRE(ps.size() == 400);
    std::size_t near = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(ps[i].x >= 0.0);
        CHECK(ps[i].x <= 8.0);
        CHECK(ps[i].y >= 0.0);
        CHECK(ps[i].y <= 8.0);
        double da = distance(ps[i], {2, 2});
        double db = distance(ps[i], {6, 6});
        if (std::min(da, db) < 4 * 0.25) ++near;
    }
    // nearly all mass within 4 standard deviations of a center
    CHECK(near >= 395);
    // allocation: first 300 points belong to city a, the rest to city b
    for (std::size_t i = 0; i < 300; ++i) CHECK(distance(ps[i], {2, 2}) < 2.0);
    for (std::size_t i = 300; i < 400; ++i) CHECK(distance(ps[i], {6, 6}) < 2.0);
}

TEST_CASE("france_model: grid block first, then city points") {
    std::vector<CitySpec> cities{{"a", {2, 2}, 1.0, 0.25}};
    FranceParams params;
    params.grid_nx = 10;
    params.grid_ny = 10;
    params.total_n = 130;
    PointSet fr = france_model(cities, params, 5);
    REQUIRE(fr.size() == 130);
    PointSet grid = make_grid(10, 10, 8, 8);
    for (std::size_t i = 0; i < 100; ++i) {
        CHECK(fr[i].x == grid[i].x);
        CHECK(fr[i].y == grid[i].y);
    }
    for (std::size_t i = 100; i < 130; ++i) CHECK(distance(fr[i], {2, 2}) < 2.0);
    CHECK_THROWS_AS(france_model(cities, FranceParams{10, 10, 50, 8, 8}, 5), ConfigError);
}

TEST_CASE("points CSV round trip is exact") {
    PointSet ps = sample_uniform(64, 8, 8, 99);
    std::string path = "unit_points_roundtrip.csv";
    write_points_csv(ps, path);
    PointSet back = read_points_csv(path, 8, 8);
    REQUIRE(back.size() == ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(back[i].x == ps[i].x);
        CHECK(back[i].y == ps[i].y);
    }
    std::remove(path.c_str());
}

TEST_CASE("read_points_csv rejects malformed input") {
    std::string path = "unit_points_bad.csv";
    io::write_file(path, "x,y\n0,0\n");
    CHECK_THROWS_AS(read_points_csv(path, 8, 8), ConfigError);
    io::write_file(path, "id,x,y\n0,1.0\n");
    CHECK_THROWS_AS(read_points_csv(path, 8, 8), ConfigError);
    io::write_file(path, "id,x,y\n1,1.0,1.0\n");
    CHECK_THROWS_AS(read_points_csv(path, 8, 8), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("city config round trip") {
    std::vector<CitySpec> cities{{"paris", {4.4, 5.95}, 12.8, 0.25},
                                 {"lille", {4.85, 7.55}, 1.2, 0.3}};
    std::string path = "unit_cities_roundtrip.json";
    save_city_config(cities, path);
    auto back = load_city_config(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].name == "paris");
    CHECK(back[0].center.x == 4.4);
    CHECK(back[0].center.y == 5.95);
    CHECK(back[0].weight == 12.8);
    CHECK(back[0].stddev == 0.25);
    CHECK(back[1].stddev == 0.3);
    std::remove(path.c_str());
}
