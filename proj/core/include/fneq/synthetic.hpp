#pragma once

#include <cstdint>

#include "fneq/types.hpp"

// Reproducible synthetic corpora for tests, benchmarks and the CLI demo.

namespace fneq {

struct SyntheticSpec {
    std::size_t n = 1000;
    std::size_t dim = 64;
    /// Gaussian-mixture components the directions are drawn around.
    std::size_t clusters = 16;
    /// Spread of each component around its unit center.
    double cluster_spread = 0.3;
    /// Norms are exp(N(norm_mu, norm_sigma)).
    double norm_mu = 0.0;
    double norm_sigma = 0.5;
    std::uint64_t seed = 0;
};

/// Items whose directions cluster around random unit centers and whose norms are log-normal.
Matrix make_items(const SyntheticSpec& spec);

/// `count` standard-normal queries of dimension `dim`.
Matrix make_queries(std::size_t count, std::size_t dim, std::uint64_t seed);

/// Plain Gaussian mixture: `clusters` centers with standard-normal coordinates
/// scaled by `separation`, points drawn with unit variance around them.
Matrix make_gaussian_mixture(std::size_t n, std::size_t dim, std::size_t clusters, double separation,
                             std::uint64_t seed);

} // namespace fneq
