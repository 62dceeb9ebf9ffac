#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrg/graph.hpp"

namespace hrg {

struct SpectralReport {
    double lambda1 = 0.0;
    double residual = 0.0;   // ||Lx - lambda x|| of the accepted pair
    std::size_t iterations = 0;  // operator applications
    std::string method;
    std::vector<double> eigenvector;  // unit Ritz vector (empty on failure)
};

std::string to_json(const SpectralReport& r);

// Iterative solver failure; carries the best estimate reached.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& msg, SpectralReport best_report)
        : std::runtime_error(msg), best(std::move(best_report)) {}
    SpectralReport best;
};

/// y = (I - D^{-1/2} A D^{-1/2}) v, matrix-free. Rejects degree-0 vertices.
std::vector<double> normalized_laplacian_apply(const Graph& g, const std::vector<double>& v);

/// Smallest eigenvalue of the normalized Laplacian orthogonal to its kernel
/// (the Fiedler value of L-bar), for connected g. Thick-restart Lanczos with
/// full reorthogonalization and explicit kernel deflation; accepts a pair
/// when ||Lx - lambda x|| <= tol * max(1, lambda).
SpectralReport lambda1(const Graph& g, double tol = 1e-8);

/// Full spectrum of the normalized Laplacian, ascending (dense Jacobi).
/// Requires n <= 512 and min degree >= 1.
std::vector<double> dense_spectrum(const Graph& g);

struct CutWitness {
    std::vector<std::uint32_t> subset;  // sorted, always contains vertex 0
    std::size_t boundary_edges = 0;
    double conductance = 0.0;
};

/// Exact conductance by enumeration of all cuts (n <= 22); ties broken by
/// lexicographically smallest subset.
CutWitness conductance_bruteforce(const Graph& g);

struct ExpansionWitness {
    std::vector<std::uint32_t> subset;  // sorted; empty when infinite
    double value = 0.0;
    bool infinite = false;  // the at-most-one-vertex convention h = infinity
};

/// Exact edge-expansion h over all A with 2|A| <= n (n <= 22).
ExpansionWitness expansion_constant_bruteforce(const Graph& g);

struct CheegerReport {
    double lambda1 = 0.0;
    double phi = 0.0;
    bool lower_ok = false;  // lambda1/2 <= phi
    bool upper_ok = false;  // phi <= sqrt(2 lambda1)
};

/// Both Cheeger inequalities with slack 1e-9 (dense lambda1, brute phi);
/// n <= 22, connected.
CheegerReport cheeger_check(const Graph& g);

/// Second-smallest eigenvalue of L = D - A (dense solve, n <= 512).
double combinatorial_laplacian_lambda1(const Graph& g);

}  // namespace hrg
