#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "fneq/neq.hpp"
#include "fneq/types.hpp"

namespace fneq {

// Dataset ingestion.
//
// fvecs: per vector, a little-endian int32 dimension followed by that many
// little-endian float32 values. CSV: one row per vector, comma separated; a
// first line that does not parse as numbers is treated as a header. Both
// loaders reject rows of differing dimension. An empty file yields 0 rows.

Matrix read_fvecs(std::istream& in);
Matrix load_fvecs(const std::filesystem::path& path);
void write_fvecs(std::ostream& out, const Matrix& rows);
void save_fvecs(const std::filesystem::path& path, const Matrix& rows);

Matrix read_csv_matrix(std::istream& in);
Matrix load_csv_matrix(const std::filesystem::path& path);
void write_csv_matrix(std::ostream& out, const Matrix& rows);

enum class VectorFormat { fvecs, csv };
Matrix load_vectors(const std::filesystem::path& path, VectorFormat format);

// Index persistence.
//
// Layout, all little-endian:
//   header (51 bytes):
//     magic "FNEQ" | u16 version = 1 | u8 mode | u32 D | u32 n | u32 m |
//     u32 m_prime | u32 k_star | u64 seed | 16 zero bytes
//   m_prime norm codebooks: k_star f32 each
//   (m - m_prime) direction codebooks: k_star x D* f32, row-major
//     (D* = D / (m - m_prime), or D for rq)
//   codes: column-major n x m, 1 byte per code when k_star <= 256, else 2.

inline constexpr std::array<char, 4> kIndexMagic = {'F', 'N', 'E', 'Q'};
inline constexpr std::uint16_t kIndexVersion = 1;
inline constexpr std::size_t kIndexHeaderBytes = 51;

struct IndexFileHeader {
    std::uint16_t version = kIndexVersion;
    IndexMode mode = IndexMode::pq;
    std::uint32_t dim = 0;
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::uint32_t m_prime = 0;
    std::uint32_t k_star = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const IndexFileHeader&, const IndexFileHeader&) = default;
};

IndexFileHeader make_header(const IndexArtifact& index);
void write_header(std::ostream& out, const IndexFileHeader& header);
/// Throws CorruptionError on a bad magic, version or mode byte.
IndexFileHeader read_header(std::istream& in);

void write_index(std::ostream& out, const IndexArtifact& index);
/// Throws CorruptionError when the stream is not a valid index.
IndexArtifact read_index(std::istream& in);

void save_index(const std::filesystem::path& path, const IndexArtifact& index);
IndexArtifact load_index(const std::filesystem::path& path);

} // namespace fneq
