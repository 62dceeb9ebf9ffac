#include "hrg/connection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hrg/io.hpp"

namespace hrg {

ConnectionFunction::ConnectionFunction(std::vector<double> radii, std::vector<double> probs)
    : radii_(std::move(radii)), probs_(std::move(probs)) {
    if (radii_.empty())
        throw ConfigError("connection function needs at least one band");
    if (radii_.size() != probs_.size())
        throw ConfigError("connection function: radii/probs length mismatch");
    double prev = 0.0;
    for (double r : radii_) {
        if (!std::isfinite(r) || r <= prev)
            throw ConfigError("connection function radii must be positive and strictly increasing");
        prev = r;
    }
    for (double p : probs_) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0)
            throw ConfigError("connection function probabilities must lie in [0,1]");
    }
}

std::size_t ConnectionFunction::band_of(double d) const {
    if (!std::isfinite(d) || d < 0.0)
        throw ConfigError("connection function evaluated at negative or non-finite distance");
    if (d == 0.0) return 0;
    // first band whose upper radius is >= d, since band k is (r_{k-1}, r_k]
    auto it = std::lower_bound(radii_.begin(), radii_.end(), d);
    return static_cast<std::size_t>(it - radii_.begin());
}

double ConnectionFunction::eval(double d) const {
    std::size_t k = band_of(d);
    return k < probs_.size() ? probs_[k] : 0.0;
}

ConnectionFunction preset(std::string_view name) {
    if (name == "U")
        return ConnectionFunction({0.15, 0.3, 1.0, 3.0, 10.0}, {1.0, 0.05, 0.03, 0.02, 0.01});
    if (name == "S")
        return ConnectionFunction({0.15, 0.3, 1.0, 3.0, 10.0}, {1.0, 0.1, 0.05, 0.01, 0.005});
    if (name == "C")
        return ConnectionFunction({0.15, 0.3, 1.0, 3.0, 10.0}, {1.0, 0.05, 0.003, 0.002, 0.001});
    if (name == "I")
        return ConnectionFunction({0.3}, {1.0});
    throw ConfigError("unknown connection preset: " + std::string(name));
}

ConnectionFunction discretize(const std::function<double(double)>& f, double h, double r_max) {
    if (!(h > 0.0) || !(r_max > 0.0))
        throw ConfigError("discretize: h and r_max must be positive");
    auto m = static_cast<std::size_t>(std::floor(r_max / h + 1e-9));
    if (m == 0)
        throw ConfigError("discretize: r_max shorter than one band");
    std::vector<double> radii(m), probs(m);
    constexpr int kSub = 64;
    for (std::size_t k = 0; k < m; ++k) {
        radii[k] = static_cast<double>(k + 1) * h;
        double lo = static_cast<double>(k) * h;
        double sum = 0.0;
        for (int s = 0; s < kSub; ++s)
            sum += f(lo + (s + 0.5) * h / kSub);
        probs[k] = std::clamp(sum / kSub, 0.0, 1.0);
    }
    return ConnectionFunction(std::move(radii), std::move(probs));
}

std::array<ConnectionFunction, 5> section51_functions() {
    const double r_max = 8.0 * std::sqrt(2.0);
    const double h = r_max / 100.0;
    auto phi1 = [](double) { return 0.5; };
    auto phi2 = [](double) { return 1.0; };
    auto phi3 = [r_max](double r) { return 1.0 - r / r_max; };
    auto phi4 = [](double r) { return std::exp(-r); };
    auto phi5 = [](double r) {
        double d = r - std::sqrt(32.0);
        return std::exp(-d * d / 16.0) / std::sqrt(16.0 * std::acos(-1.0));
    };
    return {discretize(phi1, h, r_max), discretize(phi2, h, r_max), discretize(phi3, h, r_max),
            discretize(phi4, h, r_max), discretize(phi5, h, r_max)};
}

void save_connection_file(const ConnectionFunction& cf, const std::string& path) {
    std::string out = "r,p\n";
    for (std::size_t k = 0; k < cf.bands(); ++k) {
        out += io::format_double(cf.radii()[k]);
        out += ',';
        out += io::format_double(cf.probs()[k]);
        out += '\n';
    }
    io::write_file(path, out);
}

ConnectionFunction load_connection_file(const std::string& path) {
    std::istringstream in(io::read_file(path));
    std::string line;
    if (!std::getline(in, line) || io::split_csv(line) != std::vector<std::string>{"r", "p"})
        throw ConfigError(path + ": expected header \"r,p\"");
    std::vector<double> radii, probs;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = io::split_csv(line);
        if (cells.size() != 2)
            throw ConfigError(path + ": expected two columns per band");
        radii.push_back(io::parse_double(cells[0]));
        probs.push_back(io::parse_double(cells[1]));
    }
    return ConnectionFunction(std::move(radii), std::move(probs));
}

ConnectionFunction resolve_phi(const std::string& spec) {
    if (spec == "U" || spec == "S" || spec == "C" || spec == "I")
        return preset(spec);
    if (spec.size() == 4 && spec.compare(0, 3, "phi") == 0 && spec[3] >= '1' && spec[3] <= '5')
        return section51_functions()[static_cast<std::size_t>(spec[3] - '1')];
    try {
        return load_connection_file(spec);
    } catch (const IoError&) {
        throw ConfigError("connection spec is neither a preset, phi1..phi5, nor a readable file: " +
                          spec);
    }
}

}  // namespace hrg
