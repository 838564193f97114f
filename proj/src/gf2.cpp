#include "ltstor/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace ltstor {

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may contain only 0 and 1");
        }
    }
    return v;
}

int BitVector::popcount() const {
    int n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

bool BitVector::any() const {
    for (std::uint64_t w : words_) {
        if (w) return true;
    }
    return false;
}

std::size_t BitVector::first_set() const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        if (words_[wi]) {
            return wi * 64 + static_cast<std::size_t>(std::countr_zero(words_[wi]));
        }
    }
    return npos;
}

std::size_t BitVector::next_set(std::size_t from) const {
    if (from >= size_) return npos;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (w) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
        if (++wi == words_.size()) return npos;
        w = words_[wi];
    }
}

void BitVector::xor_with(const BitVector& other) {
    if (size_ != other.size_) {
        throw std::invalid_argument("BitVector length mismatch in xor");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
}

bool BitVector::subset_of(const BitVector& other) const {
    if (size_ != other.size_) {
        throw std::invalid_argument("BitVector length mismatch in subset test");
    }
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
}

std::string BitVector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (test(i)) s[i] = '1';
    }
    return s;
}

BitVector& xor_into(BitVector& dst, const BitVector& src) {
    dst.xor_with(src);
    return dst;
}

void BitMatrix::append_row(BitVector row) {
    if (row.size() != col_count_) {
        throw std::invalid_argument("row length does not match matrix col_count");
    }
    rows_.push_back(std::move(row));
}

BitVector PivotBasis::reduce(BitVector v) const {
    for (std::size_t p = v.first_set(); p != BitVector::npos; p = v.first_set()) {
        const auto& slot = slots_[p];
        if (!slot) break;
        v.xor_with(*slot);
    }
    return v;
}

bool PivotBasis::insert(const BitVector& v) {
    BitVector red = reduce(v);
    std::size_t p = red.first_set();
    if (p == BitVector::npos) return false;
    slots_[p] = std::move(red);
    ++rank_;
    return true;
}

std::size_t rank(const BitMatrix& m) {
    PivotBasis basis(m.col_count());
    for (const auto& r : m.rows()) {
        basis.insert(r);
        if (basis.rank() == m.col_count()) break;
    }
    return basis.rank();
}

bool rank_would_increase(const BitMatrix& m, const BitVector& candidate) {
    if (candidate.size() != m.col_count()) {
        throw std::invalid_argument("candidate length does not match matrix col_count");
    }
    PivotBasis basis(m.col_count());
    for (const auto& r : m.rows()) basis.insert(r);
    return basis.would_increase(candidate);
}

}  // namespace ltstor
