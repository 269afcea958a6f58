#include "fneq/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fneq/error.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

namespace {

constexpr idx_t kUnassigned = std::numeric_limits<idx_t>::max();

void check_points(const Matrix& points, std::size_t c, const char* who) {
    if (points.rows() == 0 || points.cols() == 0) {
        throw InvalidInputError(std::string(who) + ": no points");
    }
    if (c == 0) {
        throw InvalidInputError(std::string(who) + ": cluster count must be positive");
    }
    if (c > points.rows()) {
        throw InvalidInputError(std::string(who) + ": " + std::to_string(c) + " clusters for " +
                                std::to_string(points.rows()) + " points");
    }
    if (c > kMaxCodebookSize) {
        throw InvalidInputError(std::string(who) + ": cluster count exceeds 65535");
    }
    if (!points.all_finite()) {
        throw InvalidInputError(std::string(who) + ": non-finite data");
    }
}

} // namespace

void ClusteringParams::validate() const {
    if (c == 0) {
        throw InvalidInputError("clustering: c must be at least 1");
    }
    if (!(xi_lower > 1.0) || !(xi_lower <= xi_upper)) {
        throw InvalidInputError("clustering: require 1 < xi_lower <= xi_upper");
    }
    if (!(eta_lower > 1.0) || !(eta_lower <= eta_upper)) {
        throw InvalidInputError("clustering: require 1 < eta_lower <= eta_upper");
    }
    if (!(epsilon > 0.0)) {
        throw InvalidInputError("clustering: epsilon must be positive");
    }
    if (max_iters == 0) {
        throw InvalidInputError("clustering: max_iters must be positive");
    }
}

ClusteringParams ClusteringParams::with_xi(double lower, double upper) const {
    ClusteringParams out = *this;
    out.xi_lower = lower;
    out.xi_upper = upper;
    out.eta_lower = lower;
    out.eta_upper = upper;
    return out;
}

std::vector<idx_t> kmeans_plus_plus(const Matrix& points, std::size_t c, std::uint64_t seed) {
    check_points(points, c, "kmeans++");
    const std::size_t n = points.rows();
    std::mt19937_64 rng(seed);

    std::vector<idx_t> chosen;
    chosen.reserve(c);
    std::vector<bool> taken(n, false);
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    chosen.push_back(static_cast<idx_t>(first(rng)));
    taken[chosen.back()] = true;

    std::vector<double> min_dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        min_dist[i] = squared_distance(points.row(i), points.row(chosen.back()));
    }

    while (chosen.size() < c) {
        double total = 0.0;
        for (double d : min_dist) {
            total += d;
        }
        std::size_t pick = n;
        if (total > 0.0) {
            std::uniform_real_distribution<double> unif(0.0, total);
            const double target = unif(rng);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (min_dist[i] <= 0.0) {
                    continue;
                }
                acc += min_dist[i];
                pick = i;
                if (acc > target) {
                    break;
                }
            }
        } else {
            // Fewer distinct points than clusters: take the next unused row.
            for (std::size_t i = 0; i < n; ++i) {
                if (!taken[i]) {
                    pick = i;
                    break;
                }
            }
        }
        chosen.push_back(static_cast<idx_t>(pick));
        taken[pick] = true;
        for (std::size_t i = 0; i < n; ++i) {
            min_dist[i] = std::min(min_dist[i], squared_distance(points.row(i), points.row(pick)));
        }
    }
    return chosen;
}

KMeansResult kmeans(const Matrix& points, std::size_t c, const ClusteringParams& params) {
    check_points(points, c, "kmeans");
    if (params.max_iters == 0) {
        throw InvalidInputError("kmeans: max_iters must be positive");
    }
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();

    Matrix centroids = points.gather_rows(kmeans_plus_plus(points, c, params.seed));
    std::vector<idx_t> labels(n, kUnassigned);
    std::vector<double> dist(n, 0.0);

    KMeansResult result;
    auto assign = [&]() {
        std::size_t changed = 0;
#pragma omp parallel for reduction(+ : changed) schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            auto [best, d] = nearest_row(points.row(static_cast<std::size_t>(i)), centroids);
            if (labels[i] != best) {
                labels[i] = static_cast<idx_t>(best);
                ++changed;
            }
            dist[i] = d;
        }
        double inertia = 0.0;
        for (double d : dist) {
            inertia += d;
        }
        return std::pair{changed, inertia};
    };

    std::vector<double> sums(c * dim);
    std::vector<std::size_t> counts(c);
    for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
        auto [changed, inertia] = assign();
        result.inertia_history.push_back(inertia);
        result.inertia = inertia;
        result.iterations = iter;
        if (changed == 0) {
            result.converged = true;
            break;
        }

        std::ranges::fill(sums, 0.0);
        std::ranges::fill(counts, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto x = points.row(i);
            double* s = sums.data() + labels[i] * dim;
            for (std::size_t d = 0; d < dim; ++d) {
                s[d] += x[d];
            }
            ++counts[labels[i]];
        }
        for (std::size_t k = 0; k < c; ++k) {
            auto centroid = centroids.row(k);
            if (counts[k] > 0) {
                for (std::size_t d = 0; d < dim; ++d) {
                    centroid[d] = sums[k * dim + d] / static_cast<double>(counts[k]);
                }
                continue;
            }
            // Empty cell: move it onto the worst-represented point.
            auto worst = static_cast<std::size_t>(std::ranges::max_element(dist) - dist.begin());
            std::ranges::copy(points.row(worst), centroid.begin());
            dist[worst] = 0.0;
        }
    }

    if (!result.converged) {
        // Relabel against the final centroids so labels stay nearest-centroid.
        auto [changed, inertia] = assign();
        (void)changed;
        result.inertia = inertia;
    }
    result.centroids = Codebook(std::move(centroids));
    result.assignments = std::move(labels);
    return result;
}

NormCodebook kmeans_scalar(std::span<const double> values, std::size_t k, std::size_t max_iters) {
    if (values.empty()) {
        throw InvalidInputError("kmeans_scalar: no values");
    }
    if (k == 0 || k > kMaxCodebookSize) {
        throw InvalidInputError("kmeans_scalar: k must be in [1, 65535]");
    }
    if (!std::ranges::all_of(values, [](double v) { return std::isfinite(v); })) {
        throw InvalidInputError("kmeans_scalar: non-finite value");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::ranges::sort(sorted);
    std::vector<double> distinct = sorted;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    if (distinct.size() <= k) {
        std::vector<double> codewords = distinct;
        codewords.resize(k, distinct.back());
        return NormCodebook(std::move(codewords));
    }

    std::vector<double> centers(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto pos = static_cast<std::size_t>((static_cast<double>(i) + 0.5) *
                                                  static_cast<double>(distinct.size()) /
                                                  static_cast<double>(k));
        centers[i] = distinct[std::min(pos, distinct.size() - 1)];
    }

    std::vector<double> sums(k);
    std::vector<std::size_t> counts(k);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        std::ranges::sort(centers);
        std::ranges::fill(sums, 0.0);
        std::ranges::fill(counts, 0);
        // Centers are sorted, so a single sweep assigns sorted values to cells.
        std::size_t cell = 0;
        for (double v : sorted) {
            while (cell + 1 < k && std::abs(centers[cell + 1] - v) < std::abs(v - centers[cell])) {
                ++cell;
            }
            sums[cell] += v;
            ++counts[cell];
        }
        bool moved = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (counts[i] == 0) {
                continue;
            }
            const double mean = sums[i] / static_cast<double>(counts[i]);
            if (mean != centers[i]) {
                centers[i] = mean;
                moved = true;
            }
        }
        if (!moved) {
            break;
        }
    }
    std::ranges::sort(centers);
    return NormCodebook(std::move(centers));
}

} // namespace fneq
