#include "fneq/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fneq/error.hpp"

namespace fneq {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw InvalidInputError("matrix: expected " + std::to_string(rows * cols) +
                                " values, got " + std::to_string(values_.size()));
    }
}

Matrix Matrix::gather_rows(std::span<const idx_t> ids) const {
    Matrix out(ids.size(), cols_);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] >= rows_) {
            throw InvalidInputError("matrix: row id out of range");
        }
        std::ranges::copy(row(ids[i]), out.row(i).begin());
    }
    return out;
}

Matrix Matrix::column_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) {
        throw InvalidInputError("matrix: column block out of range");
    }
    Matrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i) {
        auto src = row(i).subspan(first, count);
        std::ranges::copy(src, out.row(i).begin());
    }
    return out;
}

bool Matrix::all_finite() const {
    return std::ranges::all_of(values_, [](double v) { return std::isfinite(v); });
}

Dataset::Dataset(Matrix items) : items_(std::move(items)) {
    if (items_.rows() == 0) {
        throw InvalidInputError("dataset: at least one item is required");
    }
    if (items_.cols() == 0) {
        throw InvalidInputError("dataset: dimension must be at least 1");
    }
    if (!items_.all_finite()) {
        throw InvalidInputError("dataset: non-finite entry");
    }
}

QuerySet::QuerySet(Matrix queries) : queries_(std::move(queries)) {
    if (!queries_.all_finite()) {
        throw InvalidInputError("query set: non-finite entry");
    }
}

SubVectorLayout::SubVectorLayout(std::size_t dim, std::size_t num_subspaces)
    : dim_(dim), num_subspaces_(num_subspaces) {
    if (dim == 0 || num_subspaces == 0) {
        throw InvalidInputError("layout: dimension and sub-space count must be positive");
    }
    if (dim % num_subspaces != 0) {
        throw InvalidInputError("layout: " + std::to_string(num_subspaces) +
                                " sub-spaces do not divide dimension " + std::to_string(dim));
    }
    sub_dim_ = dim / num_subspaces;
}

Codebook::Codebook(Matrix codewords) : codewords_(std::move(codewords)) {
    if (codewords_.rows() == 0 || codewords_.rows() > kMaxCodebookSize) {
        throw InvalidInputError("codebook: size must be in [1, 65535], got " +
                                std::to_string(codewords_.rows()));
    }
    if (codewords_.cols() == 0) {
        throw InvalidInputError("codebook: codeword dimension must be positive");
    }
    if (!codewords_.all_finite()) {
        throw InvalidInputError("codebook: non-finite codeword");
    }
}

NormCodebook::NormCodebook(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty() || values_.size() > kMaxCodebookSize) {
        throw InvalidInputError("norm codebook: size must be in [1, 65535]");
    }
    if (!std::ranges::all_of(values_, [](double v) { return std::isfinite(v); })) {
        throw InvalidInputError("norm codebook: non-finite value");
    }
    if (!std::ranges::is_sorted(values_)) {
        throw InvalidInputError("norm codebook: values must be sorted ascending");
    }
}

code_t NormCodebook::encode(double value) const {
    // Sorted codewords: the nearest one is adjacent to the insertion point.
    auto it = std::ranges::lower_bound(values_, value);
    std::size_t hi = static_cast<std::size_t>(it - values_.begin());
    if (hi == values_.size()) {
        hi = values_.size() - 1;
    }
    std::size_t best = hi;
    if (hi > 0) {
        // Walk left over duplicates and prefer the lower index on ties.
        std::size_t lo = hi - 1;
        if (std::abs(value - values_[lo]) <= std::abs(values_[hi] - value)) {
            best = lo;
        }
    }
    while (best > 0 && values_[best - 1] == values_[best]) {
        --best;
    }
    return static_cast<code_t>(best);
}

CodeMatrix::CodeMatrix(std::size_t rows, std::vector<std::size_t> limits)
    : rows_(rows), limits_(std::move(limits)), codes_(rows * limits_.size(), 0) {
    for (std::size_t limit : limits_) {
        if (limit == 0 || limit > kMaxCodebookSize) {
            throw InvalidInputError("code matrix: column limit must be in [1, 65535]");
        }
    }
}

CodeMatrix::CodeMatrix(std::size_t rows, std::vector<std::size_t> limits, std::vector<code_t> codes)
    : CodeMatrix(rows, std::move(limits)) {
    if (codes.size() != codes_.size()) {
        throw CorruptionError("code matrix: expected " + std::to_string(codes_.size()) +
                              " codes, got " + std::to_string(codes.size()));
    }
    codes_ = std::move(codes);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols(); ++j) {
            if (codes_[i * cols() + j] >= limits_[j]) {
                throw CorruptionError("code matrix: code out of range at row " + std::to_string(i) +
                                      ", column " + std::to_string(j));
            }
        }
    }
}

void CodeMatrix::set_row(std::size_t i, std::span<const code_t> codes) {
    if (i >= rows_ || codes.size() != cols()) {
        throw InvalidInputError("code matrix: row shape mismatch");
    }
    for (std::size_t j = 0; j < codes.size(); ++j) {
        if (codes[j] >= limits_[j]) {
            throw CorruptionError("code matrix: code out of range in column " + std::to_string(j));
        }
    }
    std::ranges::copy(codes, codes_.begin() + static_cast<std::ptrdiff_t>(i * cols()));
}

void round_to_float(std::span<double> values) {
    for (double& v : values) {
        v = static_cast<double>(static_cast<float>(v));
    }
}

} // namespace fneq
