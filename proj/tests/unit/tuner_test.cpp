#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fneq/error.hpp"
#include "fneq/synthetic.hpp"
#include "fneq/tuner.hpp"

using namespace fneq;

TEST(GA, FindsQuadraticOptimum) {
    GAConfig config;
    config.seed = 3;
    const auto result = ga_optimize(make_quadratic_objective(8.5, 9.1), config);
    EXPECT_NEAR(result.best.xi_lower, 8.5, 0.1);
    EXPECT_NEAR(result.best.xi_upper, 9.1, 0.1);
}

TEST(GA, ConstantObjectiveStopsImmediately) {
    GAConfig config;
    const auto result = ga_optimize([](double, double) { return 4.0; }, config);
    EXPECT_TRUE(result.converged);
    EXPECT_EQ(result.generations, 0u);
    EXPECT_EQ(result.evaluated.size(), config.population);
}

TEST(GA, DeterministicTrajectory) {
    GAConfig config;
    config.seed = 17;
    const auto obj = make_quadratic_objective(3.0, 7.0);
    const auto a = ga_optimize(obj, config);
    const auto b = ga_optimize(obj, config);
    EXPECT_EQ(a.best_history, b.best_history);
    ASSERT_EQ(a.evaluated.size(), b.evaluated.size());
    for (std::size_t i = 0; i < a.evaluated.size(); ++i) {
        EXPECT_EQ(a.evaluated[i].xi_lower, b.evaluated[i].xi_lower);
        EXPECT_EQ(a.evaluated[i].xi_upper, b.evaluated[i].xi_upper);
    }
}

TEST(GA, BestCostNeverIncreasesAndGenomesRespectBounds) {
    GAConfig config;
    config.lower_bound = 2.0;
    config.upper_bound = 12.0;
    config.seed = 5;
    config.tolerance = 0.0;
    config.max_generations = 30;
    // Optimum outside the box and with the genes in reverse order.
    const auto result = ga_optimize(make_quadratic_objective(20.0, 0.5), config);
    for (std::size_t i = 1; i < result.best_history.size(); ++i) {
        EXPECT_LE(result.best_history[i], result.best_history[i - 1]);
    }
    for (const auto& g : result.evaluated) {
        EXPECT_GE(g.xi_lower, 2.0);
        EXPECT_LE(g.xi_upper, 12.0);
        EXPECT_LE(g.xi_lower, g.xi_upper);
    }
    EXPECT_LE(result.generations, 30u);
    EXPECT_EQ(result.best_history.size(), result.generations + 1);
}

TEST(GA, ObjectiveFailureCarriesGenome) {
    GAConfig config;
    try {
        ga_optimize([](double, double) -> double { throw std::runtime_error("boom"); }, config);
        FAIL() << "expected an exception";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("xi = ("), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
    }
}

TEST(GA, ConfigValidation) {
    GAConfig config;
    config.population = 2;
    EXPECT_THROW(config.validate(), InvalidInputError);
    config = GAConfig{};
    config.lower_bound = 1.0;
    EXPECT_THROW(config.validate(), InvalidInputError);
    config = GAConfig{};
    config.recombination = 1.5;
    EXPECT_THROW(config.validate(), InvalidInputError);
}

TEST(MseObjective, FiniteAndDeterministic) {
    const Dataset data(make_items({.n = 200, .dim = 8, .clusters = 4, .seed = 1}));
    ClusteringParams base;
    base.max_iters = 30;
    const auto obj = make_mse_objective(data, 2, 8, base, 0.25, 2);
    const double a = obj(2.0, 3.0);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_GE(a, 0.0);
    EXPECT_EQ(a, obj(2.0, 3.0));
    EXPECT_THROW(make_mse_objective(data, 2, 8, base, 1.5), InvalidInputError);
}

TEST(Grid, CoversAllPairsAndWritesCsv) {
    const auto grid = grid_costs(make_quadratic_objective(8.5, 9.1), 2.0, 12.0, 3);
    ASSERT_EQ(grid.size(), 9u);
    EXPECT_EQ(grid.front().xi_lower, 2.0);
    EXPECT_EQ(grid.back().xi_upper, 12.0);
    // (12, 2) is evaluated as the interval (2, 12).
    EXPECT_EQ(grid[6].cost, grid[2].cost);
    std::ostringstream out;
    write_grid_csv(out, grid);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "xi1,xi2,cost");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        double a = 0, b = 0, c = 0;
        char s1 = 0, s2 = 0;
        std::istringstream fields(line);
        fields >> a >> s1 >> b >> s2 >> c;
        EXPECT_FALSE(fields.fail());
        ++rows;
    }
    EXPECT_EQ(rows, 9u);
    EXPECT_THROW(grid_costs(make_quadratic_objective(0, 0), 3.0, 2.0, 3), InvalidInputError);
}
