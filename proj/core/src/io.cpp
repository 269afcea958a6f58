#include "fneq/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fneq/error.hpp"

namespace fneq {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

namespace {

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(T))) {
        throw CorruptionError(std::string("truncated input while reading ") + what);
    }
    return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_row(std::string_view line, std::vector<double>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::string_view field =
            trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        double value = 0.0;
        const auto* first = field.data();
        const auto* last = field.data() + field.size();
        if (!field.empty() && *first == '+') {
            ++first;
        }
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (field.empty() || ec != std::errc() || ptr != last) {
            return false;
        }
        out.push_back(value);
        if (comma == std::string_view::npos) {
            return true;
        }
        start = comma + 1;
    }
}

} // namespace

Matrix read_fvecs(std::istream& in) {
    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t dim = 0;
    while (in.peek() != std::char_traits<char>::eof()) {
        const auto d = get<std::int32_t>(in, "fvecs dimension");
        if (d <= 0) {
            throw InvalidInputError("fvecs: non-positive dimension " + std::to_string(d));
        }
        if (rows == 0) {
            dim = static_cast<std::size_t>(d);
        } else if (static_cast<std::size_t>(d) != dim) {
            throw InvalidInputError("fvecs: vector " + std::to_string(rows) + " has dimension " + std::to_string(d) +
                                    ", expected " + std::to_string(dim));
        }
        for (std::size_t j = 0; j < dim; ++j) {
            values.push_back(static_cast<double>(get<float>(in, "fvecs component")));
        }
        ++rows;
    }
    return Matrix(rows, dim, std::move(values));
}

Matrix load_fvecs(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_fvecs(in);
}

void write_fvecs(std::ostream& out, const Matrix& rows) {
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        put(out, static_cast<std::int32_t>(rows.cols()));
        for (double v : rows.row(i)) {
            put(out, static_cast<float>(v));
        }
    }
}

void save_fvecs(const std::filesystem::path& path, const Matrix& rows) {
    auto out = open_out(path);
    write_fvecs(out, rows);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

Matrix read_csv_matrix(std::istream& in) {
    std::vector<double> values;
    std::vector<double> row;
    std::size_t rows = 0;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::string line;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (!parse_row(text, row)) {
            if (!seen_content) {
                seen_content = true;
                continue; // header
            }
            throw InvalidInputError("csv: line " + std::to_string(line_no) + " is not numeric");
        }
        seen_content = true;
        if (rows == 0) {
            dim = row.size();
        } else if (row.size() != dim) {
            throw InvalidInputError("csv: line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                                    " columns, expected " + std::to_string(dim));
        }
        values.insert(values.end(), row.begin(), row.end());
        ++rows;
    }
    return Matrix(rows, dim, std::move(values));
}

Matrix load_csv_matrix(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_csv_matrix(in);
}

void write_csv_matrix(std::ostream& out, const Matrix& rows) {
    const auto old_precision = out.precision(17);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        auto r = rows.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            out << (j ? "," : "") << r[j];
        }
        out << '\n';
    }
    out.precision(old_precision);
}

Matrix load_vectors(const std::filesystem::path& path, VectorFormat format) {
    return format == VectorFormat::fvecs ? load_fvecs(path) : load_csv_matrix(path);
}

IndexFileHeader make_header(const IndexArtifact& index) {
    IndexFileHeader h;
    h.mode = index.mode;
    h.dim = static_cast<std::uint32_t>(index.dim());
    h.n = static_cast<std::uint32_t>(index.size());
    h.m = static_cast<std::uint32_t>(index.m());
    h.m_prime = static_cast<std::uint32_t>(index.m_prime());
    h.k_star = static_cast<std::uint32_t>(index.k_star);
    h.seed = index.seed;
    return h;
}

void write_header(std::ostream& out, const IndexFileHeader& header) {
    out.write(kIndexMagic.data(), kIndexMagic.size());
    put(out, header.version);
    put(out, static_cast<std::uint8_t>(header.mode));
    put(out, header.dim);
    put(out, header.n);
    put(out, header.m);
    put(out, header.m_prime);
    put(out, header.k_star);
    put(out, header.seed);
    const std::array<char, 16> reserved{};
    out.write(reserved.data(), reserved.size());
}

IndexFileHeader read_header(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (in.gcount() != 4 || magic != kIndexMagic) {
        throw CorruptionError("index: bad magic, not an FNEQ index");
    }
    IndexFileHeader h;
    h.version = get<std::uint16_t>(in, "version");
    if (h.version != kIndexVersion) {
        throw CorruptionError("index: unsupported version " + std::to_string(h.version));
    }
    const auto mode = get<std::uint8_t>(in, "mode");
    if (mode > static_cast<std::uint8_t>(IndexMode::fuzzy2_neq)) {
        throw CorruptionError("index: unknown mode " + std::to_string(mode));
    }
    h.mode = static_cast<IndexMode>(mode);
    h.dim = get<std::uint32_t>(in, "D");
    h.n = get<std::uint32_t>(in, "n");
    h.m = get<std::uint32_t>(in, "m");
    h.m_prime = get<std::uint32_t>(in, "m_prime");
    h.k_star = get<std::uint32_t>(in, "k_star");
    h.seed = get<std::uint64_t>(in, "seed");
    for (int i = 0; i < 16; ++i) {
        if (get<std::uint8_t>(in, "reserved") != 0) {
            throw CorruptionError("index: reserved header bytes must be zero");
        }
    }
    if (h.dim == 0 || h.n == 0 || h.m == 0 || h.k_star == 0 || h.k_star > kMaxCodebookSize) {
        throw CorruptionError("index: header fields out of range");
    }
    if (is_norm_explicit(h.mode) ? (h.m_prime == 0 || h.m_prime >= h.m) : h.m_prime != 0) {
        throw CorruptionError("index: m_prime inconsistent with mode");
    }
    if (h.mode != IndexMode::rq && h.dim % (h.m - h.m_prime) != 0) {
        throw CorruptionError("index: direction codebooks do not divide D");
    }
    return h;
}

void write_index(std::ostream& out, const IndexArtifact& index) {
    index.validate();
    write_header(out, make_header(index));
    for (const auto& cb : index.norm_codebooks) {
        for (double v : cb.values()) {
            put(out, static_cast<float>(v));
        }
    }
    for (const auto& cb : index.dir_codebooks) {
        for (double v : cb.codewords().values()) {
            put(out, static_cast<float>(v));
        }
    }
    const bool narrow = code_width_bytes(index.k_star) == 1;
    for (std::size_t j = 0; j < index.codes.cols(); ++j) {
        for (std::size_t i = 0; i < index.codes.rows(); ++i) {
            const code_t c = index.codes(i, j);
            if (narrow) {
                put(out, static_cast<std::uint8_t>(c));
            } else {
                put(out, static_cast<std::uint16_t>(c));
            }
        }
    }
}

IndexArtifact read_index(std::istream& in) {
    const IndexFileHeader h = read_header(in);
    const std::size_t dir_count = h.m - h.m_prime;

    IndexArtifact index;
    index.mode = h.mode;
    index.k_star = h.k_star;
    index.seed = h.seed;
    index.layout = h.mode == IndexMode::rq ? SubVectorLayout(h.dim, 1) : SubVectorLayout(h.dim, dir_count);
    const std::size_t sub_dim = h.mode == IndexMode::rq ? h.dim : index.layout.sub_dim();

    for (std::size_t s = 0; s < h.m_prime; ++s) {
        std::vector<double> values(h.k_star);
        for (auto& v : values) {
            v = static_cast<double>(get<float>(in, "norm codebook"));
        }
        try {
            index.norm_codebooks.emplace_back(std::move(values));
        } catch (const InvalidInputError& e) {
            throw CorruptionError(std::string("index: ") + e.what());
        }
    }
    for (std::size_t s = 0; s < dir_count; ++s) {
        Matrix cw(h.k_star, sub_dim);
        for (double& v : cw.values()) {
            v = static_cast<double>(get<float>(in, "direction codebook"));
        }
        try {
            index.dir_codebooks.emplace_back(std::move(cw));
        } catch (const InvalidInputError& e) {
            throw CorruptionError(std::string("index: ") + e.what());
        }
    }

    const bool narrow = code_width_bytes(h.k_star) == 1;
    std::vector<code_t> codes(static_cast<std::size_t>(h.n) * h.m);
    for (std::size_t j = 0; j < h.m; ++j) {
        for (std::size_t i = 0; i < h.n; ++i) {
            codes[i * h.m + j] = narrow ? get<std::uint8_t>(in, "codes") : get<std::uint16_t>(in, "codes");
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw CorruptionError("index: trailing bytes after codes");
    }
    index.codes = CodeMatrix(h.n, std::vector<std::size_t>(h.m, h.k_star), std::move(codes));
    index.validate();
    return index;
}

void save_index(const std::filesystem::path& path, const IndexArtifact& index) {
    auto out = open_out(path);
    write_index(out, index);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

IndexArtifact load_index(const std::filesystem::path& path) {
    auto in = open_in(path);
    return read_index(in);
}

} // namespace fneq
