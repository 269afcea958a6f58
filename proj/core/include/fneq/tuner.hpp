#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "fneq/clustering.hpp"
#include "fneq/types.hpp"

namespace fneq {

/// Cost of a fuzziness interval [xi_lower, xi_upper]; lower is better.
using XiObjective = std::function<double(double xi_lower, double xi_upper)>;

struct GAConfig {
    std::size_t population = 10;
    double mutation = 0.5;
    double recombination = 0.7;
    /// Stop once std(costs) <= tolerance * |mean(costs)|.
    double tolerance = 0.01;
    std::size_t max_generations = 50;
    double lower_bound = 1.5;
    double upper_bound = 12.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Genome {
    double xi_lower = 0.0;
    double xi_upper = 0.0;
    double cost = 0.0;
};

struct GAResult {
    Genome best;
    std::size_t generations = 0;
    bool converged = false;
    /// Best cost after initialisation and after each generation.
    std::vector<double> best_history;
    /// Every genome the objective was evaluated on, in order.
    std::vector<Genome> evaluated;
};

/// Differential evolution (best/1/bin) over the two fuzziness exponents.
///
/// Each candidate is clipped to the bounds and repaired so xi_lower <= xi_upper.
/// Selection is greedy, so the best cost never increases. An objective that
/// throws is rethrown as an Error naming the offending genome.
GAResult ga_optimize(const XiObjective& objective, const GAConfig& config);

/// Mean squared quantization error of fused fuzzy codebooks on a held-out split.
///
/// Unit directions of the non-zero items are shuffled with `seed`; the first
/// (1 - holdout) share trains `m_dir` sub-vector codebooks with the interval
/// type-2 clustering + Sugeno fusion, and the cost is the mean squared error of
/// encoding the held-out share.
XiObjective make_mse_objective(const Dataset& dataset, std::size_t m_dir, std::size_t k_star,
                               const ClusteringParams& base, double holdout = 0.2, std::uint64_t seed = 0);

/// (xi_lower - a)^2 + (xi_upper - b)^2.
XiObjective make_quadratic_objective(double a, double b);

/// Objective on a regular `steps` x `steps` grid over the bounds (all pairs, not only ordered ones).
std::vector<Genome> grid_costs(const XiObjective& objective, double lower, double upper, std::size_t steps);

/// CSV `xi1,xi2,cost`.
void write_grid_csv(std::ostream& out, std::span<const Genome> grid);

} // namespace fneq
