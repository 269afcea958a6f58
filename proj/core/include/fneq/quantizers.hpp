#pragma once

#include <span>
#include <vector>

#include "fneq/clustering.hpp"
#include "fneq/types.hpp"

namespace fneq {

/// Product quantizer: m_dir independent codebooks over contiguous sub-vectors.
struct PQIndex {
    SubVectorLayout layout;
    std::vector<Codebook> codebooks;
    CodeMatrix codes;
    /// Per-sub-space k-means inertia of the training run.
    std::vector<double> inertia;
};

/// Residual quantizer: each stage quantizes what the previous stages left over.
struct RQIndex {
    std::vector<Codebook> codebooks;
    CodeMatrix codes;
    /// Mean residual L2 norm after each stage, over the training data.
    std::vector<double> mean_residual_norm;
};

/// Per-query table of partial inner products: row j holds <q_j, c_{j,i}> for every codeword i.
struct ADCTable {
    Matrix tables;

    /// Sum of table[j][codes[j]] over all rows.
    double lookup_sum(std::span<const code_t> codes) const {
        double acc = 0.0;
        const std::size_t k = tables.cols();
        const double* t = tables.values().data();
        for (std::size_t j = 0; j < codes.size(); ++j) {
            acc += t[j * k + codes[j]];
        }
        return acc;
    }
};

/// Trains m_dir k-means codebooks of k_star codewords and encodes the dataset.
/// Sub-space j uses seed params.seed + j.
PQIndex train_pq(const Dataset& dataset, std::size_t m_dir, std::size_t k_star, const ClusteringParams& params);

/// Nearest codeword per sub-space; lowest index on ties.
std::vector<code_t> encode(std::span<const double> x, std::span<const Codebook> codebooks,
                           const SubVectorLayout& layout);

/// Concatenation of the selected codewords. Throws CorruptionError for an out-of-range code.
std::vector<double> decode(std::span<const code_t> codes, std::span<const Codebook> codebooks,
                           const SubVectorLayout& layout);

/// Trains `stages` full-dimension codebooks on successive residuals and encodes greedily.
RQIndex train_rq(const Dataset& dataset, std::size_t stages, std::size_t k_star, const ClusteringParams& params);

/// Greedy residual encoding: each stage takes the codeword nearest to the current residual.
std::vector<code_t> encode_residual(std::span<const double> x, std::span<const Codebook> codebooks);

/// Sum of the selected codewords.
std::vector<double> decode_residual(std::span<const code_t> codes, std::span<const Codebook> codebooks);

/// ADC table for sub-vector codebooks.
ADCTable build_adc_table(std::span<const double> q, std::span<const Codebook> codebooks,
                         const SubVectorLayout& layout);

/// ADC table for full-dimension (residual) codebooks.
ADCTable build_adc_table_full(std::span<const double> q, std::span<const Codebook> codebooks);

} // namespace fneq
