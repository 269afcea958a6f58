#include "fneq/quantizers.hpp"

#include <string>

#include "fneq/error.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

namespace {

void check_codebooks(std::span<const Codebook> codebooks, std::size_t expected_count, std::size_t sub_dim,
                     const char* who) {
    if (codebooks.size() != expected_count) {
        throw InvalidInputError(std::string(who) + ": expected " + std::to_string(expected_count) +
                                " codebooks, got " + std::to_string(codebooks.size()));
    }
    for (const auto& cb : codebooks) {
        if (cb.dim() != sub_dim) {
            throw InvalidInputError(std::string(who) + ": codeword length " + std::to_string(cb.dim()) +
                                    " does not match " + std::to_string(sub_dim));
        }
    }
}

std::vector<std::size_t> codebook_sizes(std::span<const Codebook> codebooks) {
    std::vector<std::size_t> sizes;
    sizes.reserve(codebooks.size());
    for (const auto& cb : codebooks) {
        sizes.push_back(cb.size());
    }
    return sizes;
}

std::size_t uniform_size(std::span<const Codebook> codebooks, const char* who) {
    const std::size_t k = codebooks.empty() ? 0 : codebooks.front().size();
    for (const auto& cb : codebooks) {
        if (cb.size() != k) {
            throw InvalidInputError(std::string(who) + ": codebooks must share one size");
        }
    }
    return k;
}

} // namespace

std::vector<code_t> encode(std::span<const double> x, std::span<const Codebook> codebooks,
                           const SubVectorLayout& layout) {
    if (x.size() != layout.dim()) {
        throw InvalidInputError("encode: vector has " + std::to_string(x.size()) + " dims, expected " +
                                std::to_string(layout.dim()));
    }
    check_codebooks(codebooks, layout.num_subspaces(), layout.sub_dim(), "encode");
    std::vector<code_t> codes(layout.num_subspaces());
    for (std::size_t j = 0; j < codes.size(); ++j) {
        codes[j] = static_cast<code_t>(nearest_row(subvector(x, layout, j), codebooks[j].codewords()).first);
    }
    return codes;
}

std::vector<double> decode(std::span<const code_t> codes, std::span<const Codebook> codebooks,
                           const SubVectorLayout& layout) {
    check_codebooks(codebooks, layout.num_subspaces(), layout.sub_dim(), "decode");
    if (codes.size() != layout.num_subspaces()) {
        throw InvalidInputError("decode: code count does not match sub-space count");
    }
    std::vector<double> out;
    out.reserve(layout.dim());
    for (std::size_t j = 0; j < codes.size(); ++j) {
        if (codes[j] >= codebooks[j].size()) {
            throw CorruptionError("decode: code " + std::to_string(codes[j]) + " out of range in sub-space " +
                                  std::to_string(j));
        }
        auto cw = codebooks[j].codeword(codes[j]);
        out.insert(out.end(), cw.begin(), cw.end());
    }
    return out;
}

PQIndex train_pq(const Dataset& dataset, std::size_t m_dir, std::size_t k_star, const ClusteringParams& params) {
    const SubVectorLayout layout(dataset.dim(), m_dir);
    if (k_star == 0 || k_star > dataset.size()) {
        throw InvalidInputError("train_pq: k_star must be in [1, n]");
    }
    PQIndex index;
    index.layout = layout;
    for (std::size_t j = 0; j < m_dir; ++j) {
        const Matrix block = dataset.items().column_block(layout.offset(j), layout.sub_dim());
        ClusteringParams sub = params;
        sub.seed = params.seed + j;
        KMeansResult km = kmeans(block, k_star, sub);
        index.inertia.push_back(km.inertia);
        index.codebooks.push_back(std::move(km.centroids));
    }
    index.codes = CodeMatrix(dataset.size(), codebook_sizes(index.codebooks));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dataset.size()); ++i) {
        const auto row = static_cast<std::size_t>(i);
        index.codes.set_row(row, encode(dataset.item(row), index.codebooks, layout));
    }
    return index;
}

std::vector<code_t> encode_residual(std::span<const double> x, std::span<const Codebook> codebooks) {
    check_codebooks(codebooks, codebooks.size(), x.size(), "encode_residual");
    std::vector<double> residual(x.begin(), x.end());
    std::vector<code_t> codes(codebooks.size());
    for (std::size_t s = 0; s < codebooks.size(); ++s) {
        const std::size_t best = nearest_row(residual, codebooks[s].codewords()).first;
        codes[s] = static_cast<code_t>(best);
        auto cw = codebooks[s].codeword(best);
        for (std::size_t d = 0; d < residual.size(); ++d) {
            residual[d] -= cw[d];
        }
    }
    return codes;
}

std::vector<double> decode_residual(std::span<const code_t> codes, std::span<const Codebook> codebooks) {
    if (codes.size() != codebooks.size() || codebooks.empty()) {
        throw InvalidInputError("decode_residual: code count does not match stage count");
    }
    std::vector<double> out(codebooks.front().dim(), 0.0);
    for (std::size_t s = 0; s < codes.size(); ++s) {
        if (codes[s] >= codebooks[s].size()) {
            throw CorruptionError("decode_residual: code out of range in stage " + std::to_string(s));
        }
        auto cw = codebooks[s].codeword(codes[s]);
        for (std::size_t d = 0; d < out.size(); ++d) {
            out[d] += cw[d];
        }
    }
    return out;
}

RQIndex train_rq(const Dataset& dataset, std::size_t stages, std::size_t k_star, const ClusteringParams& params) {
    if (stages == 0) {
        throw InvalidInputError("train_rq: at least one stage is required");
    }
    const std::size_t n = dataset.size();
    const std::size_t dim = dataset.dim();
    Matrix residual = dataset.items();
    RQIndex index;
    std::vector<code_t> codes(n * stages);

    for (std::size_t s = 0; s < stages; ++s) {
        ClusteringParams stage_params = params;
        stage_params.seed = params.seed + s;
        KMeansResult km = kmeans(residual, k_star, stage_params);
        index.codebooks.push_back(std::move(km.centroids));
        const Codebook& cb = index.codebooks.back();

        std::vector<double> norms(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(n); ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            auto r = residual.row(i);
            const std::size_t best = nearest_row(r, cb.codewords()).first;
            codes[i * stages + s] = static_cast<code_t>(best);
            auto cw = cb.codeword(best);
            for (std::size_t d = 0; d < dim; ++d) {
                r[d] -= cw[d];
            }
            norms[i] = l2_norm(r);
        }
        // Summed serially so the result does not depend on the thread count.
        double norm_sum = 0.0;
        for (double v : norms) {
            norm_sum += v;
        }
        index.mean_residual_norm.push_back(norm_sum / static_cast<double>(n));
    }
    index.codes = CodeMatrix(n, codebook_sizes(index.codebooks), std::move(codes));
    return index;
}

ADCTable build_adc_table(std::span<const double> q, std::span<const Codebook> codebooks,
                         const SubVectorLayout& layout) {
    if (q.size() != layout.dim()) {
        throw InvalidInputError("adc: query has " + std::to_string(q.size()) + " dims, expected " +
                                std::to_string(layout.dim()));
    }
    check_codebooks(codebooks, layout.num_subspaces(), layout.sub_dim(), "adc");
    const std::size_t k = uniform_size(codebooks, "adc");
    ADCTable adc{Matrix(codebooks.size(), k)};
    for (std::size_t j = 0; j < codebooks.size(); ++j) {
        auto qj = subvector(q, layout, j);
        for (std::size_t i = 0; i < k; ++i) {
            adc.tables(j, i) = dot(qj, codebooks[j].codeword(i));
        }
    }
    return adc;
}

ADCTable build_adc_table_full(std::span<const double> q, std::span<const Codebook> codebooks) {
    check_codebooks(codebooks, codebooks.size(), q.size(), "adc");
    const std::size_t k = uniform_size(codebooks, "adc");
    ADCTable adc{Matrix(codebooks.size(), k)};
    for (std::size_t s = 0; s < codebooks.size(); ++s) {
        for (std::size_t i = 0; i < k; ++i) {
            adc.tables(s, i) = dot(q, codebooks[s].codeword(i));
        }
    }
    return adc;
}

} // namespace fneq
