#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ltstor {

/// Fixed-length vector over GF(2), word-packed so XOR and reduction run on
/// whole 64-bit words. Bit i corresponds to input block i (column i of the
/// generator matrix).
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector from_string(std::string_view bits);

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    int popcount() const;
    bool any() const;
    bool none() const { return !any(); }

    /// Index of the first set bit (lowest column), or npos when zero.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t first_set() const;
    /// First set bit at index >= from, or npos.
    std::size_t next_set(std::size_t from) const;

    /// this ^= other. Lengths must match.
    void xor_with(const BitVector& other);

    bool operator==(const BitVector& other) const = default;

    /// True when every set bit of this vector is also set in `other`.
    bool subset_of(const BitVector& other) const;

    std::string to_string() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// dst ^= src, returning dst. Throws on length mismatch.
BitVector& xor_into(BitVector& dst, const BitVector& src);

/// Row-major binary matrix; all rows share col_count.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t col_count) : col_count_(col_count) {}

    void append_row(BitVector row);

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return col_count_; }
    const BitVector& row(std::size_t i) const { return rows_[i]; }
    const std::vector<BitVector>& rows() const { return rows_; }

private:
    std::size_t col_count_ = 0;
    std::vector<BitVector> rows_;
};

/// Incremental row-echelon basis over GF(2). One slot per pivot column;
/// repeated rank queries cost O(rank * k / 64) instead of a fresh
/// elimination per call.
class PivotBasis {
public:
    explicit PivotBasis(std::size_t col_count)
        : slots_(col_count), rank_(0) {}

    std::size_t rank() const { return rank_; }

    /// Reduces a copy of v against the cached pivot rows. Empty result means
    /// v lies in the current span.
    BitVector reduce(BitVector v) const;

    bool would_increase(const BitVector& v) const {
        return reduce(v).any();
    }

    /// Adds v to the basis; returns true when the rank grew.
    bool insert(const BitVector& v);

private:
    std::vector<std::optional<BitVector>> slots_;
    std::size_t rank_;
};

/// Rank of the GF(2) row span. Pure; the matrix is not modified.
std::size_t rank(const BitMatrix& m);

/// True iff appending `candidate` to m would raise its rank. One-shot
/// convenience; callers issuing many queries should keep a PivotBasis.
bool rank_would_increase(const BitMatrix& m, const BitVector& candidate);

}  // namespace ltstor
