#include "fneq/sugeno.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "fneq/error.hpp"

namespace fneq {

namespace {
constexpr std::size_t kMaxExplicitSources = 20;

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }
} // namespace

FuzzyMeasure FuzzyMeasure::cardinality(std::size_t sources) {
    if (sources == 0 || sources > 64) {
        throw InvalidInputError("fuzzy measure: source count must be in [1, 64]");
    }
    FuzzyMeasure g;
    g.kind_ = Kind::cardinality;
    g.sources_ = sources;
    return g;
}

FuzzyMeasure FuzzyMeasure::explicit_table(std::size_t sources, std::vector<double> table) {
    if (sources == 0 || sources > kMaxExplicitSources) {
        throw InvalidInputError("fuzzy measure: explicit tables support 1 to 20 sources");
    }
    const std::size_t full = (std::size_t{1} << sources) - 1;
    if (table.size() != full + 1) {
        throw InvalidInputError("fuzzy measure: table needs 2^" + std::to_string(sources) + " entries");
    }
    if (table[0] != 0.0 || table[full] != 1.0) {
        throw InvalidInputError("fuzzy measure: require g(empty) = 0 and g(all) = 1");
    }
    for (std::size_t mask = 0; mask <= full; ++mask) {
        if (!in_unit_interval(table[mask])) {
            throw InvalidInputError("fuzzy measure: values must lie in [0, 1]");
        }
        for (std::size_t bit = 0; bit < sources; ++bit) {
            const std::size_t superset = mask | (std::size_t{1} << bit);
            if (table[superset] < table[mask]) {
                throw InvalidInputError("fuzzy measure: not monotone at subset " + std::to_string(mask));
            }
        }
    }
    FuzzyMeasure g;
    g.kind_ = Kind::explicit_table;
    g.sources_ = sources;
    g.table_ = std::move(table);
    return g;
}

double FuzzyMeasure::operator()(std::uint64_t mask) const {
    if (kind_ == Kind::cardinality) {
        return static_cast<double>(std::popcount(mask)) / static_cast<double>(sources_);
    }
    return table_[static_cast<std::size_t>(mask)];
}

double sugeno_integral(const SugenoInputs& inputs, const FuzzyMeasure& measure) {
    const std::size_t n = inputs.h_values.size();
    if (n == 0) {
        throw InvalidInputError("sugeno: empty inputs");
    }
    if (inputs.memberships.size() != n) {
        throw InvalidInputError("sugeno: h values and memberships differ in length");
    }
    if (measure.sources() != n) {
        throw InvalidInputError("sugeno: measure defined over " + std::to_string(measure.sources()) +
                                " sources, got " + std::to_string(n));
    }
    std::vector<double> combined(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_unit_interval(inputs.h_values[i]) || !in_unit_interval(inputs.memberships[i])) {
            throw InvalidInputError("sugeno: inputs must lie in [0, 1]");
        }
        combined[i] = inputs.h_values[i] * inputs.memberships[i];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return combined[a] > combined[b]; });

    double result = 0.0;
    std::uint64_t mask = 0;
    for (std::size_t source : order) {
        mask |= std::uint64_t{1} << source;
        result = std::max(result, std::min(combined[source], measure(mask)));
    }
    return result;
}

Codebook fuse_codebooks(const FuzzyClusterResult& result, const FuzzyMeasure& measure) {
    const Matrix& lower = result.centroids_lower;
    const Matrix& upper = result.centroids_upper;
    if (lower.rows() == 0 || lower.rows() != upper.rows() || lower.cols() != upper.cols()) {
        throw InvalidInputError("fuse_codebooks: lower and upper centroids differ in shape");
    }
    if (result.membership_lower.rows() != lower.rows() || result.membership_upper.rows() != lower.rows()) {
        throw InvalidInputError("fuse_codebooks: membership rows must match cluster count");
    }
    if (measure.sources() != 2) {
        throw InvalidInputError("fuse_codebooks: measure must be defined over the two interval bounds");
    }

    auto row_mean = [](const Matrix& m, std::size_t i) {
        if (m.cols() == 0) {
            return 1.0;
        }
        double acc = 0.0;
        for (double v : m.row(i)) {
            acc += v;
        }
        return acc / static_cast<double>(m.cols());
    };

    Matrix fused(lower.rows(), lower.cols());
    for (std::size_t i = 0; i < lower.rows(); ++i) {
        double w_lower = row_mean(result.membership_lower, i);
        double w_upper = row_mean(result.membership_upper, i);
        const double w_max = std::max(w_lower, w_upper);
        if (w_max > 0.0) {
            w_lower /= w_max;
            w_upper /= w_max;
        } else {
            w_lower = w_upper = 1.0;
        }
        w_lower = std::clamp(w_lower, 0.0, 1.0);
        w_upper = std::clamp(w_upper, 0.0, 1.0);

        for (std::size_t d = 0; d < lower.cols(); ++d) {
            const double a = lower(i, d);
            const double b = upper(i, d);
            const double lo = std::min(a, b);
            const double hi = std::max(a, b);
            if (hi == lo) {
                fused(i, d) = a;
                continue;
            }
            const double span = hi - lo;
            SugenoInputs inputs{{(a - lo) / span, (b - lo) / span}, {w_lower, w_upper}};
            const double s = sugeno_integral(inputs, measure);
            fused(i, d) = std::clamp(lo + s * span, lo, hi);
        }
    }
    return Codebook(std::move(fused));
}

Codebook fuse_codebooks(const FuzzyClusterResult& result) {
    return fuse_codebooks(result, FuzzyMeasure::cardinality(2));
}

} // namespace fneq
