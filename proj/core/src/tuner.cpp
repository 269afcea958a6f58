#include "fneq/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "fneq/error.hpp"
#include "fneq/eval.hpp"
#include "fneq/neq.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

void GAConfig::validate() const {
    if (population < 3) {
        // Each trial needs two donors distinct from each other and from the candidate.
        throw InvalidInputError("ga: population must be at least 3");
    }
    if (mutation < 0.0 || mutation > 1.0) {
        throw InvalidInputError("ga: mutation factor must lie in [0, 1]");
    }
    if (recombination < 0.0 || recombination > 1.0) {
        throw InvalidInputError("ga: recombination rate must lie in [0, 1]");
    }
    if (!(tolerance >= 0.0)) {
        throw InvalidInputError("ga: tolerance must be non-negative");
    }
    if (!(lower_bound > 1.0) || !(lower_bound < upper_bound)) {
        throw InvalidInputError("ga: bounds must satisfy 1 < low < high");
    }
}

namespace {

void repair(Genome& g, double lo, double hi) {
    g.xi_lower = std::clamp(g.xi_lower, lo, hi);
    g.xi_upper = std::clamp(g.xi_upper, lo, hi);
    if (g.xi_lower > g.xi_upper) {
        std::swap(g.xi_lower, g.xi_upper);
    }
}

double evaluate(const XiObjective& objective, const Genome& g) {
    try {
        return objective(g.xi_lower, g.xi_upper);
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "ga: objective failed at xi = (" << g.xi_lower << ", " << g.xi_upper << "): " << e.what();
        throw Error(msg.str());
    }
}

bool spread_converged(const std::vector<Genome>& pop, double tolerance) {
    std::vector<double> costs;
    costs.reserve(pop.size());
    for (const auto& g : pop) {
        costs.push_back(g.cost);
    }
    const auto [mean, std] = mean_std(costs);
    return std <= tolerance * std::abs(mean);
}

std::size_t best_of(const std::vector<Genome>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i) {
        if (pop[i].cost < pop[best].cost) {
            best = i;
        }
    }
    return best;
}

} // namespace

GAResult ga_optimize(const XiObjective& objective, const GAConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> in_bounds(config.lower_bound, config.upper_bound);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    GAResult result;
    std::vector<Genome> pop(config.population);
    for (auto& g : pop) {
        g.xi_lower = in_bounds(rng);
        g.xi_upper = in_bounds(rng);
        repair(g, config.lower_bound, config.upper_bound);
        g.cost = evaluate(objective, g);
        result.evaluated.push_back(g);
    }
    std::size_t best = best_of(pop);
    result.best_history.push_back(pop[best].cost);

    std::uniform_int_distribution<std::size_t> member(0, pop.size() - 1);
    std::uniform_int_distribution<int> gene(0, 1);
    while (true) {
        if (spread_converged(pop, config.tolerance)) {
            result.converged = true;
            break;
        }
        if (result.generations >= config.max_generations) {
            break;
        }
        for (std::size_t i = 0; i < pop.size(); ++i) {
            std::size_t r1 = 0;
            std::size_t r2 = 0;
            do {
                r1 = member(rng);
            } while (r1 == i);
            do {
                r2 = member(rng);
            } while (r2 == i || r2 == r1);

            const Genome& b = pop[best];
            const double mutant[2] = {
                b.xi_lower + config.mutation * (pop[r1].xi_lower - pop[r2].xi_lower),
                b.xi_upper + config.mutation * (pop[r1].xi_upper - pop[r2].xi_upper),
            };
            double trial_genes[2] = {pop[i].xi_lower, pop[i].xi_upper};
            const int forced = gene(rng);
            for (int j = 0; j < 2; ++j) {
                if (j == forced || unit(rng) < config.recombination) {
                    trial_genes[j] = mutant[j];
                }
            }
            Genome trial{trial_genes[0], trial_genes[1], 0.0};
            repair(trial, config.lower_bound, config.upper_bound);
            trial.cost = evaluate(objective, trial);
            result.evaluated.push_back(trial);
            if (trial.cost <= pop[i].cost) {
                pop[i] = trial;
                if (trial.cost < pop[best].cost) {
                    best = i;
                }
            }
        }
        ++result.generations;
        result.best_history.push_back(pop[best].cost);
    }
    result.best = pop[best];
    return result;
}

XiObjective make_mse_objective(const Dataset& dataset, std::size_t m_dir, std::size_t k_star,
                               const ClusteringParams& base, double holdout, std::uint64_t seed) {
    if (!(holdout > 0.0 && holdout < 1.0)) {
        throw InvalidInputError("mse objective: holdout share must lie in (0, 1)");
    }
    const SubVectorLayout layout(dataset.dim(), m_dir);
    std::vector<idx_t> ids;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (l2_norm(dataset.item(i)) > 0.0) {
            ids.push_back(static_cast<idx_t>(i));
        }
    }
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto held = static_cast<std::size_t>(std::ceil(holdout * static_cast<double>(ids.size())));
    if (held == 0 || ids.size() - held < k_star) {
        throw InvalidInputError("mse objective: not enough non-zero items for the split");
    }

    auto directions = [&](std::span<const idx_t> rows) {
        Matrix out(rows.size(), dataset.dim());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto u = direction_vector(dataset.item(rows[r]));
            std::ranges::copy(u, out.row(r).begin());
        }
        return out;
    };
    const std::span<const idx_t> all(ids);
    Matrix train = directions(all.subspan(held));
    Matrix test = directions(all.first(held));

    return [train = std::move(train), test = std::move(test), layout, k_star, base](double lo, double hi) {
        ClusteringParams params = base.with_xi(lo, hi);
        params.c = k_star;
        double total = 0.0;
        for (std::size_t j = 0; j < layout.num_subspaces(); ++j) {
            ClusteringParams sub = params;
            sub.seed = base.seed + j;
            const Matrix block = train.column_block(layout.offset(j), layout.sub_dim());
            const Codebook cb = train_direction_codebook(block, k_star, IndexMode::fuzzy2_neq, sub);
            for (std::size_t i = 0; i < test.rows(); ++i) {
                total += nearest_row(subvector(test.row(i), layout, j), cb.codewords()).second;
            }
        }
        return total / static_cast<double>(test.rows());
    };
}

XiObjective make_quadratic_objective(double a, double b) {
    return [a, b](double lo, double hi) { return (lo - a) * (lo - a) + (hi - b) * (hi - b); };
}

std::vector<Genome> grid_costs(const XiObjective& objective, double lower, double upper, std::size_t steps) {
    if (steps < 2 || !(lower < upper)) {
        throw InvalidInputError("grid: need at least 2 steps over a non-empty range");
    }
    std::vector<Genome> grid;
    grid.reserve(steps * steps);
    const double step = (upper - lower) / static_cast<double>(steps - 1);
    for (std::size_t a = 0; a < steps; ++a) {
        for (std::size_t b = 0; b < steps; ++b) {
            Genome g{lower + step * static_cast<double>(a), lower + step * static_cast<double>(b), 0.0};
            // Unordered pairs are evaluated as their ordered interval.
            g.cost = evaluate(objective, {std::min(g.xi_lower, g.xi_upper), std::max(g.xi_lower, g.xi_upper), 0.0});
            grid.push_back(g);
        }
    }
    return grid;
}

void write_grid_csv(std::ostream& out, std::span<const Genome> grid) {
    out << "xi1,xi2,cost\n";
    for (const auto& g : grid) {
        out << g.xi_lower << ',' << g.xi_upper << ',' << g.cost << '\n';
    }
}

} // namespace fneq
