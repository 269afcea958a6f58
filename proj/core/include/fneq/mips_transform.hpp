#pragma once

#include <span>
#include <vector>

#include "fneq/types.hpp"

// Reduction of maximum inner product search to nearest neighbour search.
//
// Every item x is lifted to z = (sqrt(phi^2 - |x|^2), x) and every query q to
// q_z = (0, q), where phi is the largest item norm. Then |z| = phi for all
// items, <z, q_z> = <x, q>, and |q_z - z|^2 = |q|^2 + phi^2 - 2<x, q>, so the
// nearest augmented item is the inner-product maximiser.

namespace fneq {

/// Slack tolerated when |x| exceeds phi by rounding only.
inline constexpr double kAugmentSlack = 1e-9;

/// Largest item norm. Throws InvalidInputError for an empty matrix.
double max_norm(const Matrix& items);
inline double max_norm(const Dataset& dataset) { return max_norm(dataset.items()); }

/// (sqrt(phi^2 - |x|^2), x). Throws DomainError when |x| > phi beyond the slack.
std::vector<double> augment_item(std::span<const double> x, double phi);

/// (0, q).
std::vector<double> augment_query(std::span<const double> q);

/// Augments every row of `items` with the dataset's own max norm.
Matrix augment_items(const Matrix& items);

} // namespace fneq
