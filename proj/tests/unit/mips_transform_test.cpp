#include <gtest/gtest.h>

#include <cmath>

#include "fneq/error.hpp"
#include "fneq/mips_transform.hpp"
#include "fneq/vector_ops.hpp"
#include "oracles.hpp"

using namespace fneq;

TEST(MaxNorm, Examples) {
    EXPECT_DOUBLE_EQ(max_norm(Matrix(2, 2, std::vector<double>{3, 4, 0, 1})), 5.0);
    EXPECT_EQ(max_norm(Matrix(1, 2)), 0.0);
    EXPECT_THROW(max_norm(Matrix()), InvalidInputError);
}

TEST(MaxNorm, DominatesEveryItem) {
    const Matrix m = oracle::random_matrix(1000, 8, 1);
    const double phi = max_norm(m);
    bool attained = false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        EXPECT_GE(phi, l2_norm(m.row(i)));
        attained = attained || phi == l2_norm(m.row(i));
    }
    EXPECT_TRUE(attained);
}

TEST(AugmentItem, Examples) {
    EXPECT_EQ(augment_item(std::vector<double>{3, 4}, 5.0), (std::vector<double>{0, 3, 4}));
    EXPECT_EQ(augment_item(std::vector<double>{0, 0}, 5.0), (std::vector<double>{5, 0, 0}));
}

TEST(AugmentItem, RoundingSlackIsClampedButRealExcessThrows) {
    const std::vector<double> x{3, 4};
    const auto z = augment_item(x, 5.0 - 1e-12);
    EXPECT_EQ(z[0], 0.0);
    EXPECT_THROW(augment_item(x, 4.9), DomainError);
}

TEST(AugmentQuery, Examples) {
    EXPECT_EQ(augment_query(std::vector<double>{1, 2}), (std::vector<double>{0, 1, 2}));
    const auto zero = augment_query(std::vector<double>(3, 0.0));
    const auto z = augment_item(std::vector<double>{1, 1, 1}, 2.0);
    EXPECT_EQ(dot(zero, z), 0.0);
}

TEST(Augment, PreservesInnerProductsAndEqualisesNorms) {
    const Matrix items = oracle::random_matrix(200, 12, 5, 3.0);
    const Matrix queries = oracle::random_matrix(50, 12, 6);
    const double phi = max_norm(items);
    const Matrix lifted = augment_items(items);
    for (std::size_t i = 0; i < items.rows(); ++i) {
        EXPECT_NEAR(l2_norm(lifted.row(i)), phi, 1e-9 * phi);
        for (std::size_t k = 0; k < queries.rows(); ++k) {
            const auto qz = augment_query(queries.row(k));
            const double want = oracle::dot(items.row(i), queries.row(k));
            EXPECT_LE(std::abs(dot(lifted.row(i), qz) - want), 1e-9 * (1.0 + std::abs(want)));
        }
    }
}

TEST(Augment, NearestAugmentedItemMaximisesInnerProduct) {
    const Matrix items = oracle::random_matrix(300, 6, 8, 2.0);
    const Matrix queries = oracle::random_matrix(30, 6, 9);
    const Matrix lifted = augment_items(items);
    for (std::size_t k = 0; k < queries.rows(); ++k) {
        const auto qz = augment_query(queries.row(k));
        const std::size_t nearest = nearest_row(qz, lifted).first;
        const auto truth = oracle::sorted_topk(items, queries.row(k), 1);
        EXPECT_EQ(nearest, truth[0]);
    }
}
