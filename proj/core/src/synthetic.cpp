#include "fneq/synthetic.hpp"

#include <cmath>
#include <random>

#include "fneq/error.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

namespace {

void normalize(std::span<double> x) {
    const double norm = l2_norm(x);
    if (norm > 0.0) {
        for (double& v : x) {
            v /= norm;
        }
    }
}

} // namespace

Matrix make_items(const SyntheticSpec& spec) {
    if (spec.n == 0 || spec.dim == 0 || spec.clusters == 0) {
        throw InvalidInputError("synthetic: n, dim and clusters must be positive");
    }
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::lognormal_distribution<double> norm(spec.norm_mu, spec.norm_sigma);
    std::uniform_int_distribution<std::size_t> pick(0, spec.clusters - 1);

    Matrix centers(spec.clusters, spec.dim);
    for (std::size_t c = 0; c < spec.clusters; ++c) {
        for (double& v : centers.row(c)) {
            v = gauss(rng);
        }
        normalize(centers.row(c));
    }

    const double noise = spec.cluster_spread / std::sqrt(static_cast<double>(spec.dim));
    Matrix items(spec.n, spec.dim);
    for (std::size_t i = 0; i < spec.n; ++i) {
        auto center = centers.row(pick(rng));
        auto x = items.row(i);
        for (std::size_t j = 0; j < spec.dim; ++j) {
            x[j] = center[j] + noise * gauss(rng);
        }
        normalize(x);
        const double r = norm(rng);
        for (double& v : x) {
            v *= r;
        }
    }
    return items;
}

Matrix make_queries(std::size_t count, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix q(count, dim);
    for (double& v : q.values()) {
        v = gauss(rng);
    }
    return q;
}

Matrix make_gaussian_mixture(std::size_t n, std::size_t dim, std::size_t clusters, double separation,
                             std::uint64_t seed) {
    if (n == 0 || dim == 0 || clusters == 0) {
        throw InvalidInputError("synthetic: n, dim and clusters must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix centers(clusters, dim);
    for (double& v : centers.values()) {
        v = separation * gauss(rng);
    }
    Matrix points(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
        auto c = centers.row(i % clusters);
        auto x = points.row(i);
        for (std::size_t j = 0; j < dim; ++j) {
            x[j] = c[j] + gauss(rng);
        }
    }
    return points;
}

} // namespace fneq
