#include "fneq/neq.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "fneq/error.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

std::string_view to_string(IndexMode mode) {
    switch (mode) {
    case IndexMode::pq:
        return "pq";
    case IndexMode::rq:
        return "rq";
    case IndexMode::neq_kmeans:
        return "neq_kmeans";
    case IndexMode::fuzzy2_neq:
        return "fuzzy2_neq";
    }
    return "unknown";
}

std::optional<IndexMode> parse_index_mode(std::string_view name) {
    for (auto mode : {IndexMode::pq, IndexMode::rq, IndexMode::neq_kmeans, IndexMode::fuzzy2_neq}) {
        if (name == to_string(mode)) {
            return mode;
        }
    }
    return std::nullopt;
}

void IndexArtifact::validate() const {
    const std::size_t dir_count = dir_codebooks.size();
    if (dir_count == 0) {
        throw CorruptionError("index: no direction codebooks");
    }
    if (is_norm_explicit(mode) ? norm_codebooks.empty() : !norm_codebooks.empty()) {
        throw CorruptionError("index: norm codebook count inconsistent with mode " + std::string(to_string(mode)));
    }
    const std::size_t expected_sub_dim = mode == IndexMode::rq ? layout.dim() : layout.sub_dim();
    if (mode != IndexMode::rq && layout.num_subspaces() != dir_count) {
        throw CorruptionError("index: layout sub-space count does not match direction codebooks");
    }
    for (const auto& cb : dir_codebooks) {
        if (cb.dim() != expected_sub_dim || cb.size() != k_star) {
            throw CorruptionError("index: direction codebook shape mismatch");
        }
    }
    for (const auto& cb : norm_codebooks) {
        if (cb.size() != k_star) {
            throw CorruptionError("index: norm codebook size mismatch");
        }
    }
    if (codes.cols() != m()) {
        throw CorruptionError("index: code matrix has " + std::to_string(codes.cols()) + " columns, expected " +
                              std::to_string(m()));
    }
    for (std::size_t j = 0; j < codes.cols(); ++j) {
        if (codes.limit(j) != k_star) {
            throw CorruptionError("index: code column limit mismatch");
        }
    }
}

namespace {

Matrix unit_directions(const Matrix& items, std::vector<idx_t>* nonzero_ids) {
    std::vector<idx_t> ids;
    for (std::size_t i = 0; i < items.rows(); ++i) {
        if (l2_norm(items.row(i)) > 0.0) {
            ids.push_back(static_cast<idx_t>(i));
        }
    }
    Matrix dirs(ids.size(), items.cols());
    for (std::size_t r = 0; r < ids.size(); ++r) {
        auto u = direction_vector(items.row(ids[r]));
        std::ranges::copy(u, dirs.row(r).begin());
    }
    if (nonzero_ids != nullptr) {
        *nonzero_ids = std::move(ids);
    }
    return dirs;
}

void round_codebooks(std::vector<Codebook>& codebooks) {
    for (auto& cb : codebooks) {
        Matrix m = cb.codewords();
        round_to_float(m.values());
        cb = Codebook(std::move(m));
    }
}

NormCodebook rounded(NormCodebook cb) {
    std::vector<double> v(cb.values().begin(), cb.values().end());
    round_to_float(v);
    std::ranges::sort(v);
    return NormCodebook(std::move(v));
}

// Relative norm |x| / |x_bar| and the direction codes of one item.
struct DirectionEncoding {
    std::vector<code_t> codes;
    double relative_norm = 0.0;
};

DirectionEncoding encode_direction(std::span<const double> x, const std::vector<Codebook>& codebooks,
                                   const SubVectorLayout& layout) {
    DirectionEncoding out;
    const double norm = l2_norm(x);
    if (norm == 0.0) {
        out.codes.assign(codebooks.size(), 0);
        return out;
    }
    const auto unit = direction_vector(x);
    out.codes = encode(unit, codebooks, layout);
    const double approx_norm = l2_norm(decode(out.codes, codebooks, layout));
    out.relative_norm = approx_norm > 0.0 ? norm / approx_norm : 0.0;
    return out;
}

std::vector<code_t> encode_norm(double relative_norm, const std::vector<NormCodebook>& codebooks) {
    std::vector<code_t> codes(codebooks.size());
    double residual = relative_norm;
    for (std::size_t s = 0; s < codebooks.size(); ++s) {
        codes[s] = codebooks[s].encode(residual);
        residual -= codebooks[s][codes[s]];
    }
    return codes;
}

IndexArtifact train_norm_explicit(const Dataset& train, const Dataset& base, const IndexConfig& config) {
    const std::size_t dir_count = config.m - config.m_prime;
    const SubVectorLayout layout(train.dim(), dir_count);

    const Matrix dirs = unit_directions(train.items(), nullptr);
    if (dirs.rows() < config.k_star) {
        throw InvalidInputError("train: " + std::to_string(dirs.rows()) + " non-zero training items for k_star " +
                                std::to_string(config.k_star));
    }

    IndexArtifact index;
    index.mode = config.mode;
    index.layout = layout;
    index.k_star = config.k_star;
    index.seed = config.params.seed;
    index.params = config.params;

    for (std::size_t j = 0; j < dir_count; ++j) {
        const Matrix block = dirs.column_block(layout.offset(j), layout.sub_dim());
        ClusteringParams sub = config.params;
        sub.seed = config.params.seed + j;
        index.dir_codebooks.push_back(train_direction_codebook(block, config.k_star, config.mode, sub));
    }
    round_codebooks(index.dir_codebooks);

    // Relative norms of the non-zero training items against the trained direction codebooks.
    std::vector<double> residual(train.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(train.size()); ++i) {
        residual[i] = encode_direction(train.item(static_cast<std::size_t>(i)), index.dir_codebooks, layout)
                          .relative_norm;
    }
    std::erase_if(residual, [](double r) { return r == 0.0; });

    // Zero items need an exact 0 codeword in every stage so their norm factor is 0.
    bool has_zero = dirs.rows() < train.size();
    for (std::size_t i = 0; i < base.size() && !has_zero; ++i) {
        has_zero = l2_norm(base.item(i)) == 0.0;
    }
    const std::size_t trained_words = has_zero && config.k_star > 1 ? config.k_star - 1 : config.k_star;

    for (std::size_t s = 0; s < config.m_prime; ++s) {
        NormCodebook cb = rounded(kmeans_scalar(residual, trained_words, config.params.max_iters));
        if (has_zero) {
            std::vector<double> words(cb.values().begin(), cb.values().end());
            if (config.k_star > 1) {
                words.push_back(0.0);
            } else {
                words.assign(1, 0.0);
            }
            std::ranges::sort(words);
            cb = NormCodebook(std::move(words));
        }
        for (double& r : residual) {
            r -= cb[cb.encode(r)];
        }
        index.norm_codebooks.push_back(std::move(cb));
    }

    index.codes = CodeMatrix(base.size(), std::vector<std::size_t>(config.m, config.k_star));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < static_cast<std::ptrdiff_t>(base.size()); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        DirectionEncoding enc = encode_direction(base.item(i), index.dir_codebooks, layout);
        std::vector<code_t> row = encode_norm(enc.relative_norm, index.norm_codebooks);
        row.insert(row.end(), enc.codes.begin(), enc.codes.end());
        index.codes.set_row(i, row);
    }
    return index;
}

IndexArtifact train_baseline(const Dataset& train, const Dataset& base, const IndexConfig& config) {
    IndexArtifact index;
    index.mode = config.mode;
    index.k_star = config.k_star;
    index.seed = config.params.seed;
    index.params = config.params;
    index.codes = CodeMatrix(base.size(), std::vector<std::size_t>(config.m, config.k_star));

    if (config.mode == IndexMode::pq) {
        index.layout = SubVectorLayout(train.dim(), config.m);
        index.dir_codebooks = train_pq(train, config.m, config.k_star, config.params).codebooks;
        round_codebooks(index.dir_codebooks);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(base.size()); ++i) {
            const auto row = static_cast<std::size_t>(i);
            index.codes.set_row(row, encode(base.item(row), index.dir_codebooks, index.layout));
        }
    } else {
        index.layout = SubVectorLayout(train.dim(), 1);
        index.dir_codebooks = train_rq(train, config.m, config.k_star, config.params).codebooks;
        round_codebooks(index.dir_codebooks);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(base.size()); ++i) {
            const auto row = static_cast<std::size_t>(i);
            index.codes.set_row(row, encode_residual(base.item(row), index.dir_codebooks));
        }
    }
    return index;
}

template <bool Counting>
void scan_kernel(const IndexArtifact& index, const ADCTable& table, std::size_t count, std::span<double> out,
                 ScanCounters* counters) {
    const std::size_t m = index.m();
    const std::size_t m_prime = index.m_prime();
    const std::size_t k = table.tables.cols();
    const double* lut = table.tables.values().data();
    const code_t* codes = index.codes.values().data();

    std::uint64_t lookups = 0;
    std::uint64_t adds = 0;
    std::uint64_t mults = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const code_t* row = codes + i * m;
        double l = 0.0;
        for (std::size_t s = 0; s < m_prime; ++s) {
            l += index.norm_codebooks[s][row[s]];
            if constexpr (Counting) {
                ++adds;
            }
        }
        double r = 0.0;
        for (std::size_t s = m_prime; s < m; ++s) {
            r += lut[(s - m_prime) * k + row[s]];
            if constexpr (Counting) {
                ++lookups;
            }
        }
        if (m_prime == 0) {
            out[i] = r;
        } else {
            out[i] = l * r;
            if constexpr (Counting) {
                ++mults;
            }
        }
    }
    if constexpr (Counting) {
        counters->items += count;
        counters->lookups += lookups;
        counters->norm_adds += adds;
        counters->multiplies += mults;
    }
}

} // namespace

Codebook train_direction_codebook(const Matrix& block, std::size_t k_star, IndexMode mode,
                                  const ClusteringParams& params) {
    if (mode == IndexMode::fuzzy2_neq) {
        ClusteringParams fuzzy = params;
        fuzzy.c = k_star;
        return fuse_codebooks(it2fpcm(block, fuzzy));
    }
    return kmeans(block, k_star, params).centroids;
}

IndexArtifact train_index(const Dataset& train, const Dataset& base, const IndexConfig& config) {
    if (train.dim() != base.dim()) {
        throw InvalidInputError("train: training and base dimensions differ");
    }
    if (config.m == 0) {
        throw InvalidInputError("train: m must be positive");
    }
    if (config.k_star == 0 || config.k_star > kMaxCodebookSize) {
        throw InvalidInputError("train: k_star must be in [1, 65535]");
    }
    if (config.k_star > train.size()) {
        throw InvalidInputError("train: k_star " + std::to_string(config.k_star) + " exceeds " +
                                std::to_string(train.size()) + " training items");
    }
    if (config.mode == IndexMode::fuzzy2_neq) {
        ClusteringParams check = config.params;
        check.c = config.k_star;
        check.validate();
    }
    if (is_norm_explicit(config.mode)) {
        if (config.m_prime == 0 || config.m_prime >= config.m) {
            throw InvalidInputError("train: norm-explicit modes need 1 <= m' < m");
        }
        if (config.k_star < 2) {
            throw InvalidInputError("train: norm-explicit modes need k_star >= 2");
        }
        return train_norm_explicit(train, base, config);
    }
    return train_baseline(train, base, config);
}

IndexArtifact train_neq(const Dataset& dataset, const IndexConfig& config) {
    return train_index(dataset, dataset, config);
}

ADCTable build_query_table(std::span<const double> q, const IndexArtifact& index) {
    if (index.mode == IndexMode::rq) {
        if (q.size() != index.dim()) {
            throw InvalidInputError("query: dimension mismatch");
        }
        return build_adc_table_full(q, index.dir_codebooks);
    }
    return build_adc_table(q, index.dir_codebooks, index.layout);
}

double norm_factor(std::span<const code_t> item_codes, const IndexArtifact& index) {
    if (index.norm_codebooks.empty()) {
        return 1.0;
    }
    double l = 0.0;
    for (std::size_t s = 0; s < index.norm_codebooks.size(); ++s) {
        if (item_codes[s] >= index.norm_codebooks[s].size()) {
            throw CorruptionError("norm code out of range");
        }
        l += index.norm_codebooks[s][item_codes[s]];
    }
    return l;
}

double estimate_inner_product(std::span<const code_t> item_codes, const IndexArtifact& index,
                              const ADCTable& table) {
    if (item_codes.size() != index.m()) {
        throw InvalidInputError("estimate: code count does not match the index");
    }
    const std::size_t m_prime = index.m_prime();
    for (std::size_t s = m_prime; s < item_codes.size(); ++s) {
        if (item_codes[s] >= table.tables.cols()) {
            throw CorruptionError("direction code out of range");
        }
    }
    return norm_factor(item_codes, index) * table.lookup_sum(item_codes.subspan(m_prime));
}

std::vector<double> reconstruct(std::span<const code_t> item_codes, const IndexArtifact& index) {
    if (item_codes.size() != index.m()) {
        throw InvalidInputError("reconstruct: code count does not match the index");
    }
    const double l = norm_factor(item_codes, index);
    auto dir_codes = item_codes.subspan(index.m_prime());
    std::vector<double> x = index.mode == IndexMode::rq ? decode_residual(dir_codes, index.dir_codebooks)
                                                        : decode(dir_codes, index.dir_codebooks, index.layout);
    for (double& v : x) {
        v *= l;
    }
    return x;
}

std::vector<double> scan_scores(std::span<const double> q, const IndexArtifact& index, ScanCounters* counters,
                                std::optional<std::size_t> limit) {
    const std::size_t count = std::min(limit.value_or(index.size()), index.size());
    const ADCTable table = build_query_table(q, index);
    std::vector<double> scores(count);
    if (counters != nullptr) {
        scan_kernel<true>(index, table, count, scores, counters);
    } else {
        scan_kernel<false>(index, table, count, scores, nullptr);
    }
    return scores;
}

std::vector<ScoredItem> select_top_k(std::span<const double> scores, std::size_t k) {
    if (k > scores.size()) {
        throw InvalidInputError("top_k: k = " + std::to_string(k) + " exceeds " + std::to_string(scores.size()) +
                                " items");
    }
    // `better(a, b)`: a ranks ahead of b. The heap keeps the worst kept item on top.
    auto better = [](const ScoredItem& a, const ScoredItem& b) {
        return a.score > b.score || (a.score == b.score && a.id < b.id);
    };
    std::priority_queue<ScoredItem, std::vector<ScoredItem>, decltype(better)> heap(better);
    if (k > 0) {
        for (std::size_t i = 0; i < scores.size(); ++i) {
            ScoredItem item{static_cast<idx_t>(i), scores[i]};
            if (heap.size() < k) {
                heap.push(item);
            } else if (better(item, heap.top())) {
                heap.pop();
                heap.push(item);
            }
        }
    }
    std::vector<ScoredItem> out;
    out.reserve(heap.size());
    while (!heap.empty()) {
        out.push_back(heap.top());
        heap.pop();
    }
    std::ranges::reverse(out);
    return out;
}

std::vector<ScoredItem> top_k(std::span<const double> q, const IndexArtifact& index, std::size_t k,
                              RankingMetric metric, ScanCounters* counters) {
    if (q.size() != index.dim()) {
        throw InvalidInputError("top_k: query has " + std::to_string(q.size()) + " dims, index has " +
                                std::to_string(index.dim()));
    }
    if (k > index.size()) {
        throw InvalidInputError("top_k: k = " + std::to_string(k) + " exceeds " + std::to_string(index.size()) +
                                " items");
    }
    if (metric == RankingMetric::euclidean) {
        std::vector<double> scores(index.size());
        for (std::size_t i = 0; i < index.size(); ++i) {
            scores[i] = -squared_distance(q, reconstruct(index.codes.row(i), index));
        }
        return select_top_k(scores, k);
    }
    return select_top_k(scan_scores(q, index, counters), k);
}

} // namespace fneq
