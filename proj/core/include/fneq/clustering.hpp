#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fneq/types.hpp"

namespace fneq {

/// Parameters shared by the hard and fuzzy clustering routines.
///
/// `xi_*` bound the fuzziness exponent and `eta_*` the possibility exponent of
/// the interval type-2 clustering; k-means only reads `c`, `max_iters` and `seed`.
struct ClusteringParams {
    std::size_t c = 16;
    double xi_lower = 8.5;
    double xi_upper = 9.1;
    double eta_lower = 8.5;
    double eta_upper = 9.1;
    double epsilon = 1e-5;
    std::size_t max_iters = 100;
    std::uint64_t seed = 0;

    /// Throws InvalidInputError when an invariant does not hold.
    void validate() const;

    /// Copy with eta tied to xi, the default coupling.
    ClusteringParams with_xi(double lower, double upper) const;
};

struct KMeansResult {
    Codebook centroids;
    std::vector<idx_t> assignments;
    double inertia = 0.0;
    /// Inertia after each assignment step.
    std::vector<double> inertia_history;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Lloyd k-means with k-means++ seeding.
///
/// Iterates until assignments stop changing, so a converged result satisfies
/// both Lloyd conditions: every point is labelled with its nearest centroid and
/// every centroid is the mean of its cell. An empty cell is re-seeded with the
/// point farthest from its current centroid.
KMeansResult kmeans(const Matrix& points, std::size_t c, const ClusteringParams& params);

/// k-means++ seeding; returns the chosen row ids.
std::vector<idx_t> kmeans_plus_plus(const Matrix& points, std::size_t c, std::uint64_t seed);

/// One-dimensional Lloyd quantizer with quantile initialisation.
///
/// Output is sorted ascending. When there are at most `k` distinct values the
/// codebook reproduces them exactly, padded with the largest value.
NormCodebook kmeans_scalar(std::span<const double> values, std::size_t k, std::size_t max_iters = 100);

/// Interval type-2 fuzzy possibilistic clustering output.
///
/// Membership and possibility matrices are c x n (cluster-major).
struct FuzzyClusterResult {
    Matrix centroids_lower;
    Matrix centroids_upper;
    Matrix membership_lower;
    Matrix membership_upper;
    Matrix possibility_lower;
    Matrix possibility_upper;
    /// Objective after each iteration.
    std::vector<double> objective_history;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Interval type-2 fuzzy possibilistic c-means.
///
/// Each iteration computes distances to the type-reduced centroids, evaluates
/// the membership update for both bounds of the exponent interval and keeps
/// the elementwise min (lower) and max (upper), then recomputes the lower and
/// upper centroids as (mu + tau)^xi_lower weighted means. Stops once the
/// objective changes by less than `epsilon`; otherwise returns the iterate
/// with the lowest objective and `converged == false`.
FuzzyClusterResult it2fpcm(const Matrix& points, const ClusteringParams& params);

/// Membership of one point in each cluster for fuzziness exponent `exponent`,
/// given its Euclidean distances to the c centroids. A zero distance gives
/// membership 1 to the first coincident cluster and 0 elsewhere.
std::vector<double> fuzzy_memberships(std::span<const double> distances, double exponent);

/// Midpoint type reduction of centroids and memberships.
struct TypeReduced {
    Codebook centroids;
    Matrix membership;
};
TypeReduced type_reduce(const FuzzyClusterResult& result);

} // namespace fneq
