#pragma once

// Independent reference implementations used to check the library.
// Deliberately naive: straightforward loops, full sorts, no shared helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "fneq/types.hpp"

namespace fneq::oracle {

inline double dot(std::span<const double> a, std::span<const double> b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += static_cast<long double>(a[i]) * b[i];
    }
    return static_cast<double>(acc);
}

inline double sqdist(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return acc;
}

// Exact top-t by fully sorting all scores; ties by ascending id.
inline std::vector<idx_t> sorted_topk(const Matrix& items, std::span<const double> q, std::size_t t) {
    std::vector<std::pair<double, idx_t>> scored;
    for (std::size_t i = 0; i < items.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            s += items(i, j) * q[j];
        }
        scored.emplace_back(s, static_cast<idx_t>(i));
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<idx_t> ids;
    for (std::size_t i = 0; i < t; ++i) {
        ids.push_back(scored[i].second);
    }
    return ids;
}

inline std::size_t brute_nearest(std::span<const double> x, const Matrix& centroids) {
    std::size_t best = 0;
    double best_d = sqdist(x, centroids.row(0));
    for (std::size_t i = 1; i < centroids.rows(); ++i) {
        const double d = sqdist(x, centroids.row(i));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

// Type-1 fuzzy possibilistic c-means with a single fuzziness exponent `xi`
// and possibility exponent `eta`, following the textbook updates directly:
//   mu_ik  = ( sum_j (d_ik / d_jk)^(2/(xi-1)) )^-1
//   tau_ik = ( sum_j (d_ik / d_jk)^(2/(eta-1)) )^-1
//   v_i    = sum_k (mu_ik + tau_ik)^xi x_k / sum_k (mu_ik + tau_ik)^xi
//   J      = (1/n) sum_ik (mu_ik^xi + tau_ik^eta) |x_k - v_i|^2
// and stops once |J_t - J_{t-1}| < epsilon.
struct Type1Result {
    Matrix centroids;
    std::size_t iterations = 0;
};

inline Type1Result type1_fpcm(const Matrix& points, Matrix centroids, double xi, double eta, double epsilon,
                              std::size_t max_iters) {
    const std::size_t n = points.rows();
    const std::size_t c = centroids.rows();
    const std::size_t dim = points.cols();
    Matrix mu(c, n);
    Matrix tau(c, n);
    double previous = 0.0;
    Type1Result out;
    for (std::size_t it = 1; it <= max_iters; ++it) {
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<double> d(c);
            for (std::size_t i = 0; i < c; ++i) {
                d[i] = std::sqrt(sqdist(points.row(k), centroids.row(i)));
            }
            const auto coincident = std::find(d.begin(), d.end(), 0.0);
            if (coincident != d.end()) {
                // Limit of the update: all membership on the first coincident centroid.
                for (std::size_t i = 0; i < c; ++i) {
                    const double v = i == static_cast<std::size_t>(coincident - d.begin()) ? 1.0 : 0.0;
                    mu(i, k) = v;
                    tau(i, k) = v;
                }
                continue;
            }
            for (std::size_t i = 0; i < c; ++i) {
                double s_mu = 0.0;
                double s_tau = 0.0;
                for (std::size_t j = 0; j < c; ++j) {
                    s_mu += std::pow(d[i] / d[j], 2.0 / (xi - 1.0));
                    s_tau += std::pow(d[i] / d[j], 2.0 / (eta - 1.0));
                }
                mu(i, k) = 1.0 / s_mu;
                tau(i, k) = 1.0 / s_tau;
            }
        }
        for (std::size_t i = 0; i < c; ++i) {
            std::vector<double> acc(dim, 0.0);
            double total = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double w = std::pow(mu(i, k) + tau(i, k), xi);
                for (std::size_t d = 0; d < dim; ++d) {
                    acc[d] += w * points(k, d);
                }
                total += w;
            }
            for (std::size_t d = 0; d < dim; ++d) {
                centroids(i, d) = acc[d] / total;
            }
        }
        double j = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < c; ++i) {
                j += (std::pow(mu(i, k), xi) + std::pow(tau(i, k), eta)) * sqdist(points.row(k), centroids.row(i));
            }
        }
        j /= static_cast<double>(n);
        out.iterations = it;
        if (it > 1 && std::abs(j - previous) < epsilon) {
            break;
        }
        previous = j;
    }
    out.centroids = std::move(centroids);
    return out;
}

// Mean squared error of quantizing `values` with `codebook` (nearest codeword).
inline double scalar_mse(std::span<const double> values, std::span<const double> codebook) {
    double total = 0.0;
    for (double v : values) {
        double best = INFINITY;
        for (double c : codebook) {
            best = std::min(best, (v - c) * (v - c));
        }
        total += best;
    }
    return total / static_cast<double>(values.size());
}

// k equal-width bins over [min, max], codeword at each bin centre.
inline std::vector<double> uniform_bins(std::span<const double> values, std::size_t k) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double width = (*hi - *lo) / static_cast<double>(k);
    std::vector<double> out;
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(*lo + width * (static_cast<double>(i) + 0.5));
    }
    return out;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, scale);
    Matrix m(rows, cols);
    for (double& v : m.values()) {
        v = g(rng);
    }
    return m;
}

} // namespace fneq::oracle
