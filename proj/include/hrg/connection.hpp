#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hrg {

// Piecewise-constant map from distance to edge probability. Band k
// (0-based) covers (r_{k-1}, r_k] with r_{-1} = 0; distances beyond the
// last radius map to probability 0.
class ConnectionFunction {
public:
    ConnectionFunction(std::vector<double> radii, std::vector<double> probs);

    double eval(double d) const;

    std::size_t bands() const { return radii_.size(); }
    double max_radius() const { return radii_.back(); }
    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& probs() const { return probs_; }

    /// Band index for a distance, or bands() when d is beyond the support.
    std::size_t band_of(double d) const;

private:
    std::vector<double> radii_;  // strictly increasing, all positive
    std::vector<double> probs_;  // each in [0,1]
};

/// The four lockdown-scenario presets U, S, C, I.
ConnectionFunction preset(std::string_view name);

/// Step function with bands of width h on [0, m*h], m = floor(r_max/h);
/// p_k is the mean of f over band k (midpoint rule, 64 subintervals).
ConnectionFunction discretize(const std::function<double(double)>& f, double h, double r_max);

/// The five parameter functions of the uniform-square experiment, each
/// discretized at h = 8*sqrt(2)/100 over [0, 8*sqrt(2)].
std::array<ConnectionFunction, 5> section51_functions();

/// Text format: header "r,p" then one band per line.
void save_connection_file(const ConnectionFunction& cf, const std::string& path);
ConnectionFunction load_connection_file(const std::string& path);

/// Resolves a CLI/config phi spec: preset letter (U/S/C/I), phi1..phi5,
/// or a path to a connection file.
ConnectionFunction resolve_phi(const std::string& spec);

}  // namespace hrg
