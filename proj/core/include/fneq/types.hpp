#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fneq {

using idx_t = std::uint32_t;
using code_t = std::uint16_t;

/// Largest number of codewords a single codebook may hold (16-bit codes).
inline constexpr std::size_t kMaxCodebookSize = 65535;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        return {values_.data() + i * cols_, cols_};
    }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Copy of the rows listed in `ids`, in that order.
    Matrix gather_rows(std::span<const idx_t> ids) const;
    /// Copy of columns [first, first + count).
    Matrix column_block(std::size_t first, std::size_t count) const;

    bool all_finite() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// The MIPS corpus: n items of dimension D, all entries finite.
class Dataset {
public:
    explicit Dataset(Matrix items);

    std::size_t size() const { return items_.rows(); }
    std::size_t dim() const { return items_.cols(); }
    std::span<const double> item(std::size_t i) const { return items_.row(i); }
    const Matrix& items() const { return items_; }

private:
    Matrix items_;
};

/// Queries targeting a Dataset. May be empty.
class QuerySet {
public:
    explicit QuerySet(Matrix queries);

    std::size_t size() const { return queries_.rows(); }
    std::size_t dim() const { return queries_.cols(); }
    std::span<const double> query(std::size_t i) const { return queries_.row(i); }
    const Matrix& queries() const { return queries_; }

private:
    Matrix queries_;
};

/// Partition of a D-dimensional vector into m_dir contiguous blocks of D/m_dir.
class SubVectorLayout {
public:
    SubVectorLayout() = default;
    SubVectorLayout(std::size_t dim, std::size_t num_subspaces);

    std::size_t dim() const { return dim_; }
    std::size_t num_subspaces() const { return num_subspaces_; }
    std::size_t sub_dim() const { return sub_dim_; }
    std::size_t offset(std::size_t j) const { return j * sub_dim_; }

    friend bool operator==(const SubVectorLayout&, const SubVectorLayout&) = default;

private:
    std::size_t dim_ = 0;
    std::size_t num_subspaces_ = 0;
    std::size_t sub_dim_ = 0;
};

/// k* codewords of length D* for one sub-quantizer.
class Codebook {
public:
    Codebook() = default;
    explicit Codebook(Matrix codewords);

    std::size_t size() const { return codewords_.rows(); }
    std::size_t dim() const { return codewords_.cols(); }
    std::span<const double> codeword(std::size_t i) const { return codewords_.row(i); }
    const Matrix& codewords() const { return codewords_; }

    friend bool operator==(const Codebook&, const Codebook&) = default;

private:
    Matrix codewords_;
};

/// Scalar codebook for relative norms.
///
/// The first norm stage holds non-negative values; later residual stages may
/// hold signed corrections, so only ordering and finiteness are enforced here.
class NormCodebook {
public:
    NormCodebook() = default;
    explicit NormCodebook(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    /// Index of the nearest codeword, lowest index on ties.
    code_t encode(double value) const;

    friend bool operator==(const NormCodebook&, const NormCodebook&) = default;

private:
    std::vector<double> values_;
};

/// n x m matrix of codeword indices; column j is bounded by `limits[j]`.
class CodeMatrix {
public:
    CodeMatrix() = default;
    CodeMatrix(std::size_t rows, std::vector<std::size_t> limits);
    CodeMatrix(std::size_t rows, std::vector<std::size_t> limits, std::vector<code_t> codes);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return limits_.size(); }
    std::size_t limit(std::size_t j) const { return limits_[j]; }

    std::span<const code_t> row(std::size_t i) const {
        return {codes_.data() + i * cols(), cols()};
    }
    code_t operator()(std::size_t i, std::size_t j) const { return codes_[i * cols() + j]; }

    /// Writes one row, validating each code against its column limit.
    void set_row(std::size_t i, std::span<const code_t> codes);

    std::span<const code_t> values() const { return codes_; }

    friend bool operator==(const CodeMatrix&, const CodeMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<std::size_t> limits_;
    std::vector<code_t> codes_;
};

/// Bytes per stored code for a codebook of `k_star` entries.
inline std::size_t code_width_bytes(std::size_t k_star) { return k_star <= 256 ? 1 : 2; }

/// Rounds every entry to the nearest float32 value, in place.
void round_to_float(std::span<double> values);

} // namespace fneq
