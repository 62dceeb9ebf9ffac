#include "hrg/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "hrg/io.hpp"
#include "hrg/rng.hpp"
#include "jacobi.hpp"

namespace hrg {

std::string to_json(const SpectralReport& r) {
    std::string out = "{\"lambda1\": ";
    out += io::format_double(r.lambda1);
    out += ", \"residual\": ";
    out += io::format_double(r.residual);
    out += ", \"iterations\": ";
    out += std::to_string(r.iterations);
    out += ", \"method\": \"";
    out += r.method;
    out += "\"}";
    return out;
}

namespace {

std::vector<double> inv_sqrt_degrees(const Graph& g) {
    std::size_t n = g.num_vertices();
    std::vector<double> w(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (g.degree(v) == 0)
            throw ConfigError("normalized Laplacian undefined on degree-0 vertex");
        w[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    }
    return w;
}

// y = v - D^{-1/2} A D^{-1/2} v with precomputed D^{-1/2}
void apply_lbar(const Graph& g, const std::vector<double>& isd, const double* v, double* y) {
    auto n = static_cast<std::int64_t>(g.num_vertices());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (auto* p = g.neighbors_begin(static_cast<std::uint32_t>(i));
             p != g.neighbors_end(static_cast<std::uint32_t>(i)); ++p)
            acc += isd[*p] * v[*p];
        y[i] = v[i] - isd[i] * acc;
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

std::vector<double> normalized_laplacian_apply(const Graph& g, const std::vector<double>& v) {
    if (v.size() != g.num_vertices())
        throw ConfigError("normalized_laplacian_apply: vector length mismatch");
    auto isd = inv_sqrt_degrees(g);
    std::vector<double> y(v.size());
    apply_lbar(g, isd, v.data(), y.data());
    return y;
}

namespace {

// One deterministic pseudo-random start direction.
std::vector<double> start_vector(std::size_t n) {
    constexpr std::uint64_t kStartSeed = 0x1a2b3c4d5e6f7788ULL;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = rng::u01(rng::hash3(kStartSeed, i, 0)) - 0.5;
    return v;
}

struct RitzPair {
    double value;
    double beta_residual;  // |beta_m * y[m-1]| cheap estimate
};

}  // namespace

SpectralReport lambda1(const Graph& g, double tol) {
    if (!(tol > 0.0)) throw ConfigError("lambda1: tolerance must be positive");
    if (!is_connected(g)) throw ConfigError("lambda1: graph must be connected");
    const std::size_t n = g.num_vertices();
    if (n < 2) throw ConfigError("lambda1: need at least two vertices");
    const auto isd = inv_sqrt_degrees(g);

    // kernel direction D^{1/2} 1, normalized
    std::vector<double> q0(n);
    for (std::uint32_t v = 0; v < n; ++v) q0[v] = std::sqrt(static_cast<double>(g.degree(v)));
    double q0n = norm2(q0);
    for (double& x : q0) x /= q0n;

    const std::size_t max_basis = std::min<std::size_t>(320, n - 1);
    const std::size_t keep = std::min<std::size_t>(24, max_basis / 2 + 1);
    const std::size_t iter_cap = 10 * n;

    std::vector<std::vector<double>> basis;  // orthonormal, all orthogonal to q0
    basis.reserve(max_basis);
    // projected symmetric matrix H over the current basis, row-major
    std::vector<double> H(max_basis * max_basis, 0.0);
    auto h_at = [&](std::size_t i, std::size_t j) -> double& { return H[i * max_basis + j]; };

    std::size_t matvecs = 0;
    SpectralReport best{std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::infinity(), 0, "lanczos-tr", {}};

    // twice-iterated Gram-Schmidt against q0 and the basis
    auto orthogonalize = [&](std::vector<double>& v) {
        for (int round = 0; round < 2; ++round) {
            axpy(-dot(q0, v), q0, v);
            for (const auto& b : basis) axpy(-dot(b, v), b, v);
        }
    };

    std::uint64_t breakdown_key = 1;
    auto fresh_direction = [&](std::vector<double>& v) {
        v.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = rng::u01(rng::hash3(0x9d7f3a11c355e27bULL, i, breakdown_key)) - 0.5;
        ++breakdown_key;
        orthogonalize(v);
        double nm = norm2(v);
        if (nm < 1e-12) throw ConvergenceError("lambda1: cannot extend Krylov basis", best);
        for (double& x : v) x /= nm;
    };

    std::vector<double> v = start_vector(n);
    orthogonalize(v);
    {
        double nm = norm2(v);
        if (nm < 1e-12) fresh_direction(v);
        else
            for (double& x : v) x /= nm;
    }

    std::vector<double> w(n), ritz(n), lw(n);
    std::vector<double> small_evals, small_vecs;

    // explicit residual of the Ritz vector assembled from column col of the
    // small eigenbasis over the current m basis vectors
    auto explicit_check = [&](std::size_t m, std::size_t col, double theta) {
        std::fill(ritz.begin(), ritz.end(), 0.0);
        for (std::size_t j = 0; j < m; ++j)
            axpy(small_vecs[j * m + col], basis[j], ritz);
        double rn = norm2(ritz);
        for (double& x : ritz) x /= rn;
        apply_lbar(g, isd, ritz.data(), lw.data());
        ++matvecs;
        double num = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = lw[i] - theta * ritz[i];
            num += d * d;
        }
        return std::sqrt(num);
    };

    while (true) {
        // Extend the basis with Lanczos steps. H is maintained as the exact
        // projection of the operator onto the basis (the coefficients of the
        // full reorthogonalization), which also captures the thick-restart
        // arrow couplings without special cases.
        while (basis.size() < max_basis && matvecs < iter_cap) {
            basis.push_back(std::move(v));
            std::size_t j = basis.size() - 1;
            apply_lbar(g, isd, basis[j].data(), w.data());
            ++matvecs;
            std::vector<double> wv(w.begin(), w.end());
            axpy(-dot(q0, wv), q0, wv);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                double c = dot(basis[i], wv);
                h_at(i, j) = c;
                h_at(j, i) = c;
                axpy(-c, basis[i], wv);
            }
            // second Gram-Schmidt round; corrections are below working precision of H
            axpy(-dot(q0, wv), q0, wv);
            for (const auto& b : basis) axpy(-dot(b, wv), b, wv);
            double beta = norm2(wv);
            if (beta < 1e-12) {
                beta = 0.0;
                if (basis.size() < max_basis) {
                    fresh_direction(wv);
                    v = std::move(wv);
                }
            } else {
                for (double& x : wv) x /= beta;
                v = std::move(wv);
            }

            std::size_t m = basis.size();
            bool full = m == max_basis;
            bool staged = m >= 48 && (m % 48 == 0);
            if (!full && !staged) continue;

            std::vector<double> Hm(m * m);
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c) Hm[r * m + c] = h_at(r, c);
            detail::jacobi_eigh(Hm, m, small_evals, &small_vecs);
            double theta = small_evals[0];
            double est = std::abs(beta * small_vecs[(m - 1) * m + 0]);
            if (m >= n - 1) est = 0.0;  // the deflated space is exhausted
            if (est < best.residual || std::isnan(best.lambda1)) {
                best.lambda1 = theta;
                best.residual = est;
                best.iterations = matvecs;
            }
            if (est <= tol * std::max(1.0, theta)) {
                double res = explicit_check(m, 0, theta);
                if (res <= tol * std::max(1.0, theta)) {
                    best.lambda1 = theta;
                    best.residual = res;
                    best.iterations = matvecs;
                    best.eigenvector = ritz;
                    return best;
                }
            }
            if (full) break;
        }

        if (matvecs >= iter_cap)
            throw ConvergenceError("lambda1: iteration cap reached", best);
        std::size_t m = basis.size();
        if (m >= n - 1)
            throw ConvergenceError("lambda1: tolerance unreachable on full subspace", best);

        // thick restart: keep the lowest Ritz vectors, carry the residual
        // direction in v; the next projection pass rebuilds the couplings
        std::vector<double> Hm(m * m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) Hm[r * m + c] = h_at(r, c);
        detail::jacobi_eigh(Hm, m, small_evals, &small_vecs);

        std::size_t k = std::min(keep, m);
        std::vector<std::vector<double>> new_basis(k, std::vector<double>(n, 0.0));
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < m; ++j)
                axpy(small_vecs[j * m + c], basis[j], new_basis[c]);

        std::fill(H.begin(), H.end(), 0.0);
        basis = std::move(new_basis);
        for (std::size_t c = 0; c < basis.size(); ++c) h_at(c, c) = small_evals[c];
        if (v.size() != n) {  // breakdown at a full basis leaves v moved-from
            fresh_direction(v);
        } else {
            orthogonalize(v);
            double nm = norm2(v);
            if (nm < 1e-12) {
                fresh_direction(v);
            } else {
                for (double& x : v) x /= nm;
            }
        }
    }
}

namespace {

std::vector<double> dense_symmetric_eigs(std::vector<double> mat, std::size_t n) {
    std::vector<double> evals;
    detail::jacobi_eigh(mat, n, evals, nullptr);
    return evals;
}

}  // namespace

std::vector<double> dense_spectrum(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n > 512) throw ConfigError("dense_spectrum: n > 512");
    auto isd = inv_sqrt_degrees(g);
    std::vector<double> mat(n * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        mat[i * n + i] = 1.0;
        for (auto* p = g.neighbors_begin(i); p != g.neighbors_end(i); ++p)
            mat[i * n + *p] = -isd[i] * isd[*p];
    }
    return dense_symmetric_eigs(std::move(mat), n);
}

double combinatorial_laplacian_lambda1(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n > 512) throw ConfigError("combinatorial_laplacian_lambda1: n > 512");
    if (!is_connected(g))
        throw ConfigError("combinatorial_laplacian_lambda1: graph must be connected");
    std::vector<double> mat(n * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) {
        mat[i * n + i] = static_cast<double>(g.degree(i));
        for (auto* p = g.neighbors_begin(i); p != g.neighbors_end(i); ++p)
            mat[i * n + *p] = -1.0;
    }
    auto evals = dense_symmetric_eigs(std::move(mat), n);
    return evals[1];
}

namespace {

// lexicographic order on the sorted-vertex-sequence reading of bitmasks
bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
    if (a == b) return false;
    std::uint32_t d = (a ^ b) & ~((a ^ b) - 1);  // lowest differing bit
    std::uint32_t above = ~(d - 1) & ~d;
    if (a & d) return (b & above) != 0;  // a's next element is smaller unless b ends here
    return (a & above) == 0;             // a is a strict prefix of b
}

std::vector<std::uint32_t> mask_to_subset(std::uint32_t mask) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; mask; ++v, mask >>= 1)
        if (mask & 1) out.push_back(v);
    return out;
}

}  // namespace

CutWitness conductance_bruteforce(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n > 22) throw ConfigError("conductance_bruteforce: n > 22");
    if (n < 2) throw ConfigError("conductance_bruteforce: need at least two vertices");
    if (!is_connected(g)) throw ConfigError("conductance_bruteforce: graph must be connected");

    auto edges = g.edge_list();
    std::vector<std::uint64_t> deg(n);
    std::uint64_t total_vol = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        total_vol += deg[v];
    }

    std::uint32_t best_mask = 0;
    std::uint64_t best_cut = 0, best_den = 0;  // value = cut/den, den > 0
    const std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
    for (std::uint32_t mask = 1; mask < full; mask += 2) {  // vertex 0 always in S
        std::uint64_t cut = 0;
        for (auto [u, vtx] : edges)
            cut += ((mask >> u) ^ (mask >> vtx)) & 1u;
        std::uint64_t vol = 0;
        for (std::uint32_t t = mask; t; t &= t - 1)
            vol += deg[static_cast<std::uint32_t>(std::countr_zero(t))];
        std::uint64_t den = std::min(vol, total_vol - vol);
        bool better;
        if (best_den == 0) {
            better = true;
        } else {
            auto lhs = static_cast<unsigned __int128>(cut) * best_den;
            auto rhs = static_cast<unsigned __int128>(best_cut) * den;
            better = lhs < rhs || (lhs == rhs && mask_lex_less(mask, best_mask));
        }
        if (better) {
            best_mask = mask;
            best_cut = cut;
            best_den = den;
        }
    }
    CutWitness w;
    w.subset = mask_to_subset(best_mask);
    w.boundary_edges = best_cut;
    w.conductance = static_cast<double>(best_cut) / static_cast<double>(best_den);
    return w;
}

ExpansionWitness expansion_constant_bruteforce(const Graph& g) {
    std::size_t n = g.num_vertices();
    if (n > 22) throw ConfigError("expansion_constant_bruteforce: n > 22");
    ExpansionWitness w;
    if (n <= 1) {
        w.infinite = true;
        w.value = std::numeric_limits<double>::infinity();
        return w;
    }
    auto edges = g.edge_list();
    std::uint32_t best_mask = 0;
    std::uint64_t best_cut = 0, best_size = 0;
    const std::uint32_t full = (1u << n);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        auto size = static_cast<std::uint64_t>(std::popcount(mask));
        if (2 * size > n) continue;
        std::uint64_t cut = 0;
        for (auto [u, vtx] : edges)
            cut += ((mask >> u) ^ (mask >> vtx)) & 1u;
        bool better;
        if (best_size == 0) {
            better = true;
        } else {
            std::uint64_t lhs = cut * best_size;
            std::uint64_t rhs = best_cut * size;
            better = lhs < rhs || (lhs == rhs && mask_lex_less(mask, best_mask));
        }
        if (better) {
            best_mask = mask;
            best_cut = cut;
            best_size = size;
        }
    }
    w.subset = mask_to_subset(best_mask);
    w.value = static_cast<double>(best_cut) / static_cast<double>(best_size);
    return w;
}

CheegerReport cheeger_check(const Graph& g) {
    CheegerReport rep;
    rep.lambda1 = dense_spectrum(g)[1];
    rep.phi = conductance_bruteforce(g).conductance;
    constexpr double kSlack = 1e-9;
    rep.lower_ok = rep.lambda1 / 2.0 <= rep.phi + kSlack;
    rep.upper_ok = rep.phi <= std::sqrt(2.0 * rep.lambda1) + kSlack;
    return rep;
}

}  // namespace hrg
