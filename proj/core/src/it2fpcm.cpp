#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fneq/clustering.hpp"
#include "fneq/error.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

std::vector<double> fuzzy_memberships(std::span<const double> distances, double exponent) {
    const std::size_t c = distances.size();
    std::vector<double> out(c, 0.0);
    if (c == 0) {
        return out;
    }
    for (std::size_t i = 0; i < c; ++i) {
        if (distances[i] == 0.0) {
            out[i] = 1.0;
            return out;
        }
    }
    // mu_i = 1 / sum_j (d_i / d_j)^p  ==  d_i^-p / sum_j d_j^-p, evaluated in log space.
    const double p = 2.0 / (exponent - 1.0);
    double log_min = std::numeric_limits<double>::infinity();
    for (double d : distances) {
        log_min = std::min(log_min, std::log(d));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        out[i] = std::exp(-p * (std::log(distances[i]) - log_min));
        total += out[i];
    }
    for (double& v : out) {
        v /= total;
    }
    return out;
}

namespace {

struct FuzzyState {
    Matrix lower;
    Matrix upper;
    Matrix mu_lower;
    Matrix mu_upper;
    Matrix tau_lower;
    Matrix tau_upper;
};

// Weighted mean of the points with weights (mu + tau)^exponent per cluster.
void update_centroids(const Matrix& points, const Matrix& mu, const Matrix& tau, double exponent,
                      Matrix& centroids) {
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(centroids.rows()); ++ci) {
        const auto i = static_cast<std::size_t>(ci);
        std::vector<double> acc(dim, 0.0);
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double w = std::pow(mu(i, k) + tau(i, k), exponent);
            if (w == 0.0) {
                continue;
            }
            auto x = points.row(k);
            for (std::size_t d = 0; d < dim; ++d) {
                acc[d] += w * x[d];
            }
            total += w;
        }
        if (total > 0.0) {
            auto v = centroids.row(i);
            for (std::size_t d = 0; d < dim; ++d) {
                v[d] = acc[d] / total;
            }
        }
    }
}

double objective(const Matrix& points, const FuzzyState& s, const ClusteringParams& params) {
    const std::size_t n = points.rows();
    const std::size_t c = s.lower.rows();
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        auto x = points.row(k);
        for (std::size_t i = 0; i < c; ++i) {
            const double lower = std::pow(s.mu_lower(i, k), params.xi_lower) +
                                 std::pow(s.tau_lower(i, k), params.eta_lower);
            const double upper = std::pow(s.mu_upper(i, k), params.xi_upper) +
                                 std::pow(s.tau_upper(i, k), params.eta_upper);
            total += 0.5 * (lower * squared_distance(x, s.lower.row(i)) +
                            upper * squared_distance(x, s.upper.row(i)));
        }
    }
    return total / static_cast<double>(n);
}

} // namespace

FuzzyClusterResult it2fpcm(const Matrix& points, const ClusteringParams& params) {
    params.validate();
    const std::size_t n = points.rows();
    const std::size_t c = params.c;
    if (n == 0 || points.cols() == 0) {
        throw InvalidInputError("it2fpcm: no points");
    }
    if (c > n) {
        throw InvalidInputError("it2fpcm: " + std::to_string(c) + " clusters for " + std::to_string(n) +
                                " points");
    }
    if (!points.all_finite()) {
        throw InvalidInputError("it2fpcm: non-finite data");
    }

    FuzzyState state;
    state.lower = points.gather_rows(kmeans_plus_plus(points, c, params.seed));
    state.upper = state.lower;
    state.mu_lower = Matrix(c, n);
    state.mu_upper = Matrix(c, n);
    state.tau_lower = Matrix(c, n);
    state.tau_upper = Matrix(c, n);

    FuzzyClusterResult result;
    FuzzyState best;
    double best_objective = std::numeric_limits<double>::infinity();
    const bool same_eta = params.eta_lower == params.xi_lower && params.eta_upper == params.xi_upper;

    for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t kk = 0; kk < static_cast<std::ptrdiff_t>(n); ++kk) {
            const auto k = static_cast<std::size_t>(kk);
            auto x = points.row(k);
            std::vector<double> dist(c);
            for (std::size_t i = 0; i < c; ++i) {
                double acc = 0.0;
                auto lo = state.lower.row(i);
                auto hi = state.upper.row(i);
                for (std::size_t d = 0; d < x.size(); ++d) {
                    const double diff = x[d] - 0.5 * (lo[d] + hi[d]);
                    acc += diff * diff;
                }
                dist[i] = std::sqrt(acc);
            }
            const auto mu1 = fuzzy_memberships(dist, params.xi_lower);
            const auto mu2 = fuzzy_memberships(dist, params.xi_upper);
            const auto tau1 = same_eta ? mu1 : fuzzy_memberships(dist, params.eta_lower);
            const auto tau2 = same_eta ? mu2 : fuzzy_memberships(dist, params.eta_upper);
            for (std::size_t i = 0; i < c; ++i) {
                state.mu_lower(i, k) = std::min(mu1[i], mu2[i]);
                state.mu_upper(i, k) = std::max(mu1[i], mu2[i]);
                state.tau_lower(i, k) = std::min(tau1[i], tau2[i]);
                state.tau_upper(i, k) = std::max(tau1[i], tau2[i]);
            }
        }

        // Both bounds use the lower fuzziness exponent in the centroid weights.
        update_centroids(points, state.mu_lower, state.tau_lower, params.xi_lower, state.lower);
        update_centroids(points, state.mu_upper, state.tau_upper, params.xi_lower, state.upper);

        const double j = objective(points, state, params);
        result.objective_history.push_back(j);
        result.iterations = iter;
        if (j < best_objective) {
            best_objective = j;
            best = state;
        }
        const std::size_t t = result.objective_history.size();
        if (t >= 2 && std::abs(result.objective_history[t - 1] - result.objective_history[t - 2]) <
                          params.epsilon) {
            result.converged = true;
            break;
        }
    }

    FuzzyState& out = result.converged ? state : best;
    result.centroids_lower = std::move(out.lower);
    result.centroids_upper = std::move(out.upper);
    result.membership_lower = std::move(out.mu_lower);
    result.membership_upper = std::move(out.mu_upper);
    result.possibility_lower = std::move(out.tau_lower);
    result.possibility_upper = std::move(out.tau_upper);
    return result;
}

TypeReduced type_reduce(const FuzzyClusterResult& result) {
    const Matrix& lo = result.centroids_lower;
    const Matrix& hi = result.centroids_upper;
    if (lo.rows() != hi.rows() || lo.cols() != hi.cols() ||
        result.membership_lower.rows() != result.membership_upper.rows() ||
        result.membership_lower.cols() != result.membership_upper.cols()) {
        throw InvalidInputError("type_reduce: lower and upper shapes differ");
    }
    Matrix centroids(lo.rows(), lo.cols());
    for (std::size_t i = 0; i < centroids.values().size(); ++i) {
        centroids.values()[i] = 0.5 * (lo.values()[i] + hi.values()[i]);
    }
    Matrix membership(result.membership_lower.rows(), result.membership_lower.cols());
    for (std::size_t i = 0; i < membership.values().size(); ++i) {
        membership.values()[i] = 0.5 * (result.membership_lower.values()[i] + result.membership_upper.values()[i]);
    }
    return {Codebook(std::move(centroids)), std::move(membership)};
}

} // namespace fneq
