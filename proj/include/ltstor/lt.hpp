#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltstor/gf2.hpp"
#include "ltstor/rng.hpp"
#include "ltstor/rsd.hpp"

namespace ltstor {

/// A group of k consecutive blocks encoded together. All blocks share one
/// size.
struct Epoch {
    std::vector<std::vector<std::uint8_t>> blocks;

    std::size_t k() const { return blocks.size(); }
    std::size_t block_size() const { return blocks.empty() ? 0 : blocks[0].size(); }

    static Epoch random(std::size_t k, std::size_t block_size, Rng& rng);
    void validate() const;
};

/// One coded block: payload C (empty in symbolic mode) plus its length-k
/// coefficient vector v. degree == popcount(coeffs).
struct Droplet {
    BitVector coeffs;
    std::vector<std::uint8_t> payload;
    int degree = 0;

    bool symbolic() const { return payload.empty(); }
};

/// XOR of the epoch blocks selected by `indices`; used by both encoders and
/// by tests that pin the selection.
Droplet make_droplet(const Epoch& epoch, std::span<const std::size_t> indices);

/// Degree-d droplet over d distinct uniformly chosen blocks, payload mode.
Droplet encode_droplet(const Epoch& epoch, std::size_t degree, Rng& rng);
/// Same selection process, coefficients only (symbolic mode).
Droplet encode_droplet(std::size_t k, std::size_t degree, Rng& rng);

/// The S droplet nodes archiving one chain. Droplets of one node are
/// identical across epochs (same coefficients), so one stored droplet per
/// node represents every epoch; `epochs` records how many it stands for.
struct FullNode {
    std::size_t k = 0;
    std::size_t S = 0;
    std::size_t epochs = 1;
    std::vector<Droplet> droplet_nodes;
};

FullNode generate_full_node(const Epoch& epoch, std::size_t S,
                            const DegreeDistribution& dist, Rng& rng);
FullNode generate_full_node(std::size_t k, std::size_t S,
                            const DegreeDistribution& dist, Rng& rng);

}  // namespace ltstor
