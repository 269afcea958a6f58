#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fneq/clustering.hpp"
#include "fneq/types.hpp"

namespace fneq {

/// Monotone set function over a finite set of sources, g(empty) = 0, g(all) = 1.
class FuzzyMeasure {
public:
    enum class Kind { cardinality, explicit_table };

    /// g(A) = |A| / sources.
    static FuzzyMeasure cardinality(std::size_t sources);

    /// g given for every subset, indexed by bitmask (bit i set = source i included).
    /// Throws InvalidInputError unless the table is a valid normalized monotone measure.
    static FuzzyMeasure explicit_table(std::size_t sources, std::vector<double> table);

    Kind kind() const { return kind_; }
    std::size_t sources() const { return sources_; }

    /// Measure of the subset encoded by `mask`.
    double operator()(std::uint64_t mask) const;

private:
    Kind kind_ = Kind::cardinality;
    std::size_t sources_ = 0;
    std::vector<double> table_;
};

/// Evaluations h of each source and their membership in the fuzzy set of codebooks.
struct SugenoInputs {
    std::vector<double> h_values;
    std::vector<double> memberships;
};

/// Sugeno integral with the product t-norm.
///
/// Each source contributes h * membership; sources are ranked by that value
/// in descending order and the result is max_i min(value_(i), g(top i sources)).
/// Inputs must lie in [0, 1] and match the measure's source count.
double sugeno_integral(const SugenoInputs& inputs, const FuzzyMeasure& measure);

/// Fuses the lower and upper centroids of an interval clustering into one crisp codebook.
///
/// For each cluster, the two sources are weighted by their cluster-mean
/// membership (lower or upper), rescaled so the stronger source has weight 1.
/// Per coordinate, the pair is mapped affinely onto [0, 1], integrated with
/// `measure` (two sources) and mapped back. Coordinates where both bounds agree
/// pass through unchanged, and every output lies between its two sources.
Codebook fuse_codebooks(const FuzzyClusterResult& result, const FuzzyMeasure& measure);
Codebook fuse_codebooks(const FuzzyClusterResult& result);

} // namespace fneq
