#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hrg {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Euclidean distance in the plane.
double distance(const Point& p, const Point& q);

/// One population center of the city mixture model.
struct CitySpec {
    std::string name;
    Point center;
    double weight = 0.0;   // relative population mass, >= 0
    double stddev = 0.25;  // spread of the isotropic bivariate normal, > 0
};

// A fixed, ordered vertex set inside a [0,width] x [0,height] box.
// Vertex index i refers to points()[i] for the lifetime of the object.
class PointSet {
public:
    PointSet(std::vector<Point> points, double width, double height,
             std::string label = "");

    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    double width() const { return width_; }
    double height() const { return height_; }
    double bbox_diagonal() const;
    const std::string& label() const { return label_; }

private:
    std::vector<Point> points_;
    double width_;
    double height_;
    std::string label_;
};

/// n i.i.d. uniform points on [0,width] x [0,height]; deterministic given seed.
PointSet sample_uniform(std::size_t n, double width, double height, std::uint64_t seed);

/// nx*ny points at cell centers ((i+0.5)*width/nx, (j+0.5)*height/ny),
/// row-major with x varying fastest. Mesh spacing is exactly width/nx.
PointSet make_grid(std::size_t nx, std::size_t ny, double width, double height);

// Splits n into integer shares proportional to weights (largest-remainder
// rule; ties broken by position). Shares sum to n exactly.
std::vector<std::size_t> largest_remainder_allocation(const std::vector<double>& weights,
                                                      std::size_t n);

/// n points from a mixture of isotropic Gaussians, one per city, with counts
/// from largest_remainder_allocation. Draws outside the box are resampled.
PointSet sample_city_mixture(const std::vector<CitySpec>& cities, std::size_t n,
                             double width, double height, std::uint64_t seed);

struct FranceParams {
    std::size_t grid_nx = 60;
    std::size_t grid_ny = 60;
    std::size_t total_n = 6000;
    double width = 8.0;
    double height = 8.0;
};

/// Countryside grid plus city mixture: make_grid points first (deterministic),
/// then total_n - nx*ny city points.
PointSet france_model(const std::vector<CitySpec>& cities, const FranceParams& params,
                      std::uint64_t seed);

/// CSV with header "id,x,y", ids 0..n-1.
void write_points_csv(const PointSet& ps, const std::string& path);

/// Reads the id,x,y format back. If width/height are 0 the box is inferred
/// from the largest coordinates.
PointSet read_points_csv(const std::string& path, double width = 0.0, double height = 0.0,
                         const std::string& label = "");

/// City config: JSON {"cities":[{"name","cx","cy","weight","stddev"},...]}.
std::vector<CitySpec> load_city_config(const std::string& path);
void save_city_config(const std::vector<CitySpec>& cities, const std::string& path);

}  // namespace hrg
