#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hrg::detail {

// Cyclic Jacobi for symmetric A (row-major n*n, destroyed). Eigenvalues come
// back ascending; if vecs is non-null it receives the matching eigenvectors
// as columns (vecs[i*n + k] = component i of eigenvector k).
inline void jacobi_eigh(std::vector<double>& a, std::size_t n, std::vector<double>& evals,
                        std::vector<double>* vecs) {
    if (vecs) {
        vecs->assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) (*vecs)[i * n + i] = 1.0;
    }
    evals.resize(n);
    if (n == 0) return;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
        return std::sqrt(2.0 * s);
    };

    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() > 1e-13; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a[i * n + p], aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = a[p * n + i], aqi = a[q * n + i];
                    a[p * n + i] = c * api - s * aqi;
                    a[q * n + i] = s * api + c * aqi;
                }
                if (vecs) {
                    for (std::size_t i = 0; i < n; ++i) {
                        double vip = (*vecs)[i * n + p], viq = (*vecs)[i * n + q];
                        (*vecs)[i * n + p] = c * vip - s * viq;
                        (*vecs)[i * n + q] = s * vip + c * viq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a[i * n + i];
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
    for (std::size_t k = 0; k < n; ++k) evals[k] = diag[order[k]];
    if (vecs) {
        std::vector<double> sorted(n * n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) sorted[i * n + k] = (*vecs)[i * n + order[k]];
        *vecs = std::move(sorted);
    }
}

}  // namespace hrg::detail
