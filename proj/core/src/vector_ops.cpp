#include "fneq/vector_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fneq/error.hpp"

namespace fneq {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

double squared_norm(std::span<const double> x) { return dot(x, x); }

double l2_norm(std::span<const double> x) {
    // Scale by the largest magnitude so huge or tiny entries do not over/underflow.
    double scale = 0.0;
    for (double v : x) {
        scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (double v : x) {
        const double s = v / scale;
        acc += s * s;
    }
    return scale * std::sqrt(acc);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

std::vector<double> direction_vector(std::span<const double> x) {
    const double norm = l2_norm(x);
    if (norm == 0.0) {
        throw ZeroNormError("direction of a zero vector is undefined");
    }
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) {
        v /= norm;
    }
    return out;
}

std::span<const double> subvector(std::span<const double> x, const SubVectorLayout& layout, std::size_t j) {
    return x.subspan(layout.offset(j), layout.sub_dim());
}

std::vector<std::vector<double>> split_subvectors(std::span<const double> x, const SubVectorLayout& layout) {
    if (x.size() != layout.dim()) {
        throw InvalidInputError("split: vector has " + std::to_string(x.size()) +
                                " dims, layout expects " + std::to_string(layout.dim()));
    }
    std::vector<std::vector<double>> parts;
    parts.reserve(layout.num_subspaces());
    for (std::size_t j = 0; j < layout.num_subspaces(); ++j) {
        auto block = subvector(x, layout, j);
        parts.emplace_back(block.begin(), block.end());
    }
    return parts;
}

std::pair<std::size_t, double> nearest_row(std::span<const double> x, const Matrix& codewords) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < codewords.rows(); ++i) {
        const double d = squared_distance(x, codewords.row(i));
        if (d < best_dist) {
            best_dist = d;
            best = i;
        }
    }
    return {best, best_dist};
}

} // namespace fneq
