#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ltstor {

// splitmix64 finalizer; used to key independent streams off a master seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Derives the seed of the stream `index` (trial, grid point, ...) from a
/// master seed. Streams are independent of execution order, which keeps
/// parallel runs bit-identical to sequential ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

/// Seeded random stream. All randomness in the library flows through this
/// class; nothing reads ambient entropy.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, bias-free.
    std::size_t below(std::size_t n) {
        const std::uint64_t bound = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % bound);
    }

    /// `count` distinct indices from [0, n), uniform without replacement.
    /// Partial Fisher-Yates; the returned order is itself uniformly random.
    std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t count) {
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t j = i + below(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(count);
        return pool;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace ltstor
