#include "hrg/points.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "hrg/io.hpp"
#include "hrg/rng.hpp"
#include "json.hpp"

namespace hrg {

namespace {

// Stream tags keeping the point-sampling draw families apart.
constexpr std::uint64_t kUniformX = 0;
constexpr std::uint64_t kUniformY = 1;
constexpr std::uint64_t kCityStream = 2;

void check_box(double width, double height) {
    if (!(width > 0.0) || !(height > 0.0))
        throw ConfigError("box dimensions must be positive");
}

}  // namespace

double distance(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::sqrt(dx * dx + dy * dy);
}

PointSet::PointSet(std::vector<Point> points, double width, double height, std::string label)
    : points_(std::move(points)), width_(width), height_(height), label_(std::move(label)) {
    check_box(width_, height_);
    if (points_.empty()) throw ConfigError("point set must contain at least one point");
    for (const Point& p : points_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw ConfigError("point coordinates must be finite");
        if (p.x < 0.0 || p.x > width_ || p.y < 0.0 || p.y > height_)
            throw ConfigError("point outside bounding box");
    }
}

double PointSet::bbox_diagonal() const {
    return std::sqrt(width_ * width_ + height_ * height_);
}

PointSet sample_uniform(std::size_t n, double width, double height, std::uint64_t seed) {
    if (n == 0) throw ConfigError("need at least one point");
    check_box(width, height);
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i].x = rng::u01(rng::hash3(seed, kUniformX, i)) * width;
        pts[i].y = rng::u01(rng::hash3(seed, kUniformY, i)) * height;
    }
    return PointSet(std::move(pts), width, height, "uniform");
}

PointSet make_grid(std::size_t nx, std::size_t ny, double width, double height) {
    if (nx < 2 || ny < 2) throw ConfigError("grid needs at least 2 points per axis");
    check_box(width, height);
    const double hx = width / static_cast<double>(nx);
    const double hy = height / static_cast<double>(ny);
    std::vector<Point> pts;
    pts.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            pts.push_back({(static_cast<double>(i) + 0.5) * hx,
                           (static_cast<double>(j) + 0.5) * hy});
    return PointSet(std::move(pts), width, height, "grid");
}

std::vector<std::size_t> largest_remainder_allocation(const std::vector<double>& weights,
                                                      std::size_t n) {
    if (weights.empty()) throw ConfigError("allocation needs at least one weight");
    long double total = 0.0L;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("weights must be finite and >= 0");
        total += w;
    }
    if (!(total > 0.0L)) throw ConfigError("at least one weight must be positive");

    const std::size_t m = weights.size();
    std::vector<std::size_t> shares(m, 0);
    std::vector<long double> remainders(m, 0.0L);
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < m; ++c) {
        const long double quota = static_cast<long double>(n) * weights[c] / total;
        long double fl = std::floor(quota);
        if (fl > quota) fl -= 1.0L;  // guard against floor landing above the quota
        shares[c] = static_cast<std::size_t>(fl);
        remainders[c] = quota - fl;
        assigned += shares[c];
    }

    // Hand out the leftover units by decreasing remainder; ties keep config order.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return remainders[a] > remainders[b];
    });
    std::size_t leftover = n - std::min(n, assigned);
    for (std::size_t k = 0; leftover > 0; k = (k + 1) % m) {
        shares[order[k]] += 1;
        --leftover;
    }
    return shares;
}

PointSet sample_city_mixture(const std::vector<CitySpec>& cities, std::size_t n,
                             double width, double height, std::uint64_t seed) {
    if (n == 0) throw ConfigError("need at least one point");
    check_box(width, height);
    std::vector<double> weights;
    weights.reserve(cities.size());
    for (const CitySpec& c : cities) {
        if (!(c.stddev > 0.0)) throw ConfigError("city stddev must be positive: " + c.name);
        weights.push_back(c.weight);
    }
    const std::vector<std::size_t> shares = largest_remainder_allocation(weights, n);

    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t c = 0; c < cities.size(); ++c) {
        const CitySpec& city = cities[c];
        const std::uint64_t city_seed = rng::hash3(seed, kCityStream, c);
        for (std::size_t k = 0; k < shares[c]; ++k) {
            // Box-Muller; out-of-box draws are resampled with a fresh attempt key.
            for (std::uint64_t attempt = 0;; ++attempt) {
                const std::uint64_t b1 = rng::hash3(city_seed, k, 2 * attempt);
                const std::uint64_t b2 = rng::hash3(city_seed, k, 2 * attempt + 1);
                const double radius = std::sqrt(-2.0 * std::log(rng::u01_open(b1)));
                const double angle = 2.0 * M_PI * rng::u01(b2);
                const Point p{city.center.x + city.stddev * radius * std::cos(angle),
                              city.center.y + city.stddev * radius * std::sin(angle)};
                if (p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height) {
                    pts.push_back(p);
                    break;
                }
            }
        }
    }
    return PointSet(std::move(pts), width, height, "cities");
}

PointSet france_model(const std::vector<CitySpec>& cities, const FranceParams& params,
                      std::uint64_t seed) {
    const std::size_t grid_n = params.grid_nx * params.grid_ny;
    if (params.total_n <= grid_n)
        throw ConfigError("total_n must exceed the grid size");
    PointSet grid = make_grid(params.grid_nx, params.grid_ny, params.width, params.height);
    PointSet mix = sample_city_mixture(cities, params.total_n - grid_n, params.width,
                                       params.height, seed);
    std::vector<Point> pts = grid.points();
    pts.insert(pts.end(), mix.points().begin(), mix.points().end());
    return PointSet(std::move(pts), params.width, params.height, "france");
}

void write_points_csv(const PointSet& ps, const std::string& path) {
    std::ostringstream out;
    out << "id,x,y\n";
    for (std::size_t i = 0; i < ps.size(); ++i)
        out << i << ',' << io::format_double(ps[i].x) << ',' << io::format_double(ps[i].y)
            << '\n';
    io::write_file(path, out.str());
}

PointSet read_points_csv(const std::string& path, double width, double height,
                         const std::string& label) {
    std::istringstream in(io::read_file(path));
    std::string line;
    if (!std::getline(in, line) || io::split_csv(line) != std::vector<std::string>{"id", "x", "y"})
        throw ConfigError("points csv must start with header id,x,y: " + path);
    std::vector<Point> pts;
    std::size_t expect = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = io::split_csv(line);
        if (fields.size() != 3) throw ConfigError("malformed points row: " + line);
        if (static_cast<std::size_t>(io::parse_int(fields[0])) != expect)
            throw ConfigError("point ids must be consecutive from 0: " + path);
        pts.push_back({io::parse_double(fields[1]), io::parse_double(fields[2])});
        ++expect;
    }
    if (width <= 0.0 || height <= 0.0) {
        for (const Point& p : pts) {
            width = std::max(width, p.x);
            height = std::max(height, p.y);
        }
    }
    return PointSet(std::move(pts), width, height, label.empty() ? path : label);
}

std::vector<CitySpec> load_city_config(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad city config " + path + ": " + e.what());
    }
    if (!j.contains("cities") || !j["cities"].is_array() || j["cities"].empty())
        throw ConfigError("city config needs a non-empty 'cities' array: " + path);
    std::vector<CitySpec> cities;
    for (const auto& c : j["cities"]) {
        CitySpec spec;
        spec.name = c.at("name").get<std::string>();
        spec.center.x = c.at("cx").get<double>();
        spec.center.y = c.at("cy").get<double>();
        spec.weight = c.at("weight").get<double>();
        spec.stddev = c.value("stddev", 0.25);
        if (spec.weight < 0.0) throw ConfigError("negative weight for city " + spec.name);
        if (!(spec.stddev > 0.0)) throw ConfigError("stddev must be positive for " + spec.name);
        cities.push_back(std::move(spec));
    }
    return cities;
}

void save_city_config(const std::vector<CitySpec>& cities, const std::string& path) {
    nlohmann::ordered_json out;
    out["cities"] = nlohmann::ordered_json::array();
    for (const CitySpec& c : cities) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["cx"] = c.center.x;
        jc["cy"] = c.center.y;
        jc["weight"] = c.weight;
        jc["stddev"] = c.stddev;
        out["cities"].push_back(jc);
    }
    io::write_file(path, out.dump(2) + "\n");
}

}  // namespace hrg
