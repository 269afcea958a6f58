#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fneq/types.hpp"

namespace fneq {

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> x);
double l2_norm(std::span<const double> x);
double squared_distance(std::span<const double> a, std::span<const double> b);

/// x / ||x||_2. Throws ZeroNormError for the zero vector.
std::vector<double> direction_vector(std::span<const double> x);

/// Block j of x under `layout`, without copying.
std::span<const double> subvector(std::span<const double> x, const SubVectorLayout& layout, std::size_t j);

/// Copies of the m_dir blocks of x. Throws InvalidInputError on a length mismatch.
std::vector<std::vector<double>> split_subvectors(std::span<const double> x, const SubVectorLayout& layout);

/// Nearest row of `codewords` to x by squared Euclidean distance; lowest index wins ties.
std::pair<std::size_t, double> nearest_row(std::span<const double> x, const Matrix& codewords);

} // namespace fneq
