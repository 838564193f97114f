#include "ltstor/lt.hpp"

#include <stdexcept>

namespace ltstor {

Epoch Epoch::random(std::size_t k, std::size_t block_size, Rng& rng) {
    Epoch e;
    e.blocks.resize(k);
    for (auto& b : e.blocks) {
        b.resize(block_size);
        for (auto& byte : b) byte = static_cast<std::uint8_t>(rng.next_u64());
    }
    return e;
}

void Epoch::validate() const {
    if (blocks.empty()) throw std::invalid_argument("epoch: k must be >= 1");
    for (const auto& b : blocks) {
        if (b.size() != blocks[0].size()) {
            throw std::invalid_argument("epoch: blocks must share one size");
        }
    }
}

Droplet make_droplet(const Epoch& epoch, std::span<const std::size_t> indices) {
    Droplet d;
    d.coeffs = BitVector(epoch.k());
    d.payload.assign(epoch.block_size(), 0);
    for (std::size_t m : indices) {
        if (m >= epoch.k()) throw std::invalid_argument("block index out of range");
        if (d.coeffs.test(m)) throw std::invalid_argument("block indices must be distinct");
        d.coeffs.set(m);
        const auto& block = epoch.blocks[m];
        for (std::size_t j = 0; j < block.size(); ++j) d.payload[j] ^= block[j];
    }
    d.degree = static_cast<int>(indices.size());
    return d;
}

namespace {

Droplet encode_symbolic(std::size_t k, std::size_t degree, Rng& rng) {
    if (degree < 1 || degree > k) {
        throw std::invalid_argument("droplet degree must lie in [1, k]");
    }
    Droplet d;
    d.coeffs = BitVector(k);
    for (std::size_t m : rng.sample_distinct(k, degree)) d.coeffs.set(m);
    d.degree = static_cast<int>(degree);
    return d;
}

}  // namespace

Droplet encode_droplet(const Epoch& epoch, std::size_t degree, Rng& rng) {
    if (degree < 1 || degree > epoch.k()) {
        throw std::invalid_argument("droplet degree must lie in [1, k]");
    }
    auto indices = rng.sample_distinct(epoch.k(), degree);
    return make_droplet(epoch, indices);
}

Droplet encode_droplet(std::size_t k, std::size_t degree, Rng& rng) {
    return encode_symbolic(k, degree, rng);
}

namespace {

template <typename EncodeOne>
FullNode generate_node(std::size_t k, std::size_t S, EncodeOne&& encode_one) {
    if (S <= k) throw std::invalid_argument("full node requires S > k");
    FullNode node;
    node.k = k;
    node.S = S;
    node.droplet_nodes.reserve(S);
    for (std::size_t i = 0; i < S; ++i) node.droplet_nodes.push_back(encode_one());
    return node;
}

}  // namespace

FullNode generate_full_node(const Epoch& epoch, std::size_t S,
                            const DegreeDistribution& dist, Rng& rng) {
    epoch.validate();
    return generate_node(epoch.k(), S, [&] {
        return encode_droplet(epoch, dist.sample(rng), rng);
    });
}

FullNode generate_full_node(std::size_t k, std::size_t S,
                            const DegreeDistribution& dist, Rng& rng) {
    return generate_node(k, S, [&] {
        return encode_droplet(k, dist.sample(rng), rng);
    });
}

}  // namespace ltstor
