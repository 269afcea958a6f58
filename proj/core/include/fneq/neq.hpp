#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fneq/clustering.hpp"
#include "fneq/quantizers.hpp"
#include "fneq/sugeno.hpp"
#include "fneq/types.hpp"

namespace fneq {

/// Values match the on-disk mode byte.
enum class IndexMode : std::uint8_t { pq = 0, rq = 1, neq_kmeans = 2, fuzzy2_neq = 3 };

std::string_view to_string(IndexMode mode);
std::optional<IndexMode> parse_index_mode(std::string_view name);
inline bool is_norm_explicit(IndexMode mode) {
    return mode == IndexMode::neq_kmeans || mode == IndexMode::fuzzy2_neq;
}

struct IndexConfig {
    IndexMode mode = IndexMode::fuzzy2_neq;
    /// Total codebooks, norm codebooks included.
    std::size_t m = 8;
    /// Norm codebooks; ignored (forced to 0) for pq and rq.
    std::size_t m_prime = 1;
    std::size_t k_star = 16;
    ClusteringParams params;
};

/// A trained, queryable index.
///
/// Codes are stored n x m with the m' norm codes first. For pq and the NEQ
/// modes the direction codebooks cover contiguous sub-vectors described by
/// `layout`; for rq they are full-dimension stages summed on reconstruction.
/// Codebook values are float32-representable so a saved index reloads exactly.
struct IndexArtifact {
    IndexMode mode = IndexMode::pq;
    SubVectorLayout layout;
    std::vector<NormCodebook> norm_codebooks;
    std::vector<Codebook> dir_codebooks;
    CodeMatrix codes;
    std::size_t k_star = 0;
    std::uint64_t seed = 0;
    ClusteringParams params;

    std::size_t dim() const { return layout.dim(); }
    std::size_t size() const { return codes.rows(); }
    std::size_t m() const { return norm_codebooks.size() + dir_codebooks.size(); }
    std::size_t m_prime() const { return norm_codebooks.size(); }

    /// Throws CorruptionError if codebooks, codes and layout disagree.
    void validate() const;
};

/// Trains codebooks on `train` and encodes every item of `base`.
///
/// NEQ modes follow the codebook-training procedure: unit directions of the
/// non-zero training items train m - m' sub-vector codebooks (k-means, or the
/// interval type-2 clustering fused by the Sugeno integral); each item's
/// relative norm |x| / |x_bar| against its direction reconstruction x_bar is
/// then quantized by m' scalar codebooks, the first on the raw value and the
/// rest on additive residuals. Zero items get relative norm 0.
IndexArtifact train_index(const Dataset& train, const Dataset& base, const IndexConfig& config);

/// train_index on a single dataset.
IndexArtifact train_neq(const Dataset& dataset, const IndexConfig& config);

/// Direction codebooks for one sub-vector block, per the mode (kmeans or fuzzy2).
Codebook train_direction_codebook(const Matrix& block, std::size_t k_star, IndexMode mode,
                                  const ClusteringParams& params);

/// ADC table for `q` against the index's direction codebooks.
ADCTable build_query_table(std::span<const double> q, const IndexArtifact& index);

/// Sum of the selected norm codewords; 1 for modes without norm codebooks.
double norm_factor(std::span<const code_t> item_codes, const IndexArtifact& index);

/// (sum of norm codewords) * (sum of table lookups over direction codes).
double estimate_inner_product(std::span<const code_t> item_codes, const IndexArtifact& index,
                              const ADCTable& table);

/// (sum of norm codewords) * (direction reconstruction). Throws CorruptionError on bad codes.
std::vector<double> reconstruct(std::span<const code_t> item_codes, const IndexArtifact& index);

/// Operations performed by a scan, for cost accounting.
struct ScanCounters {
    std::uint64_t items = 0;
    std::uint64_t lookups = 0;
    std::uint64_t norm_adds = 0;
    /// One per item for the norm-explicit modes; pq and rq skip the norm factor.
    std::uint64_t multiplies = 0;
};

struct ScoredItem {
    idx_t id = 0;
    double score = 0.0;
    friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

enum class RankingMetric {
    inner_product,
    /// Negative squared Euclidean distance to the reconstruction. Experimental.
    euclidean,
};

/// Estimated inner product of `q` with every item (or with the first `limit` items).
std::vector<double> scan_scores(std::span<const double> q, const IndexArtifact& index,
                                ScanCounters* counters = nullptr, std::optional<std::size_t> limit = std::nullopt);

/// Best `k` of `scores` in descending order, ties by ascending id.
std::vector<ScoredItem> select_top_k(std::span<const double> scores, std::size_t k);

/// Top `k` items by estimated inner product. Throws InvalidInputError when k > n.
std::vector<ScoredItem> top_k(std::span<const double> q, const IndexArtifact& index, std::size_t k = 20,
                              RankingMetric metric = RankingMetric::inner_product,
                              ScanCounters* counters = nullptr);

} // namespace fneq
