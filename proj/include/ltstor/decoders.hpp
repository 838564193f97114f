#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "ltstor/lt.hpp"

namespace ltstor {

enum class DecoderKind { Bp, Ofg, Brh, Crh };

/// Result of one decode attempt. XOR accounting is uniform across decoders:
/// one unit per droplet-pair XOR event, coefficient and payload update
/// together counting once.
struct DecodeOutcome {
    bool success = false;
    /// recovered[m] true when block m was reconstructed.
    std::vector<bool> recovered;
    /// Payload mode only: the reconstructed blocks (empty vectors where
    /// unrecovered). Empty in symbolic mode.
    std::vector<std::vector<std::uint8_t>> blocks;
    std::uint64_t xor_count = 0;
    /// Droplet nodes actually consumed (bootstrap overhead).
    std::size_t droplets_used = 0;
    /// Blocks recovered by the BP (peeling) phase.
    std::size_t eta_b = 0;
};

/// Peeling state over the droplet/block bipartite graph. Droplets are held
/// as working copies whose coefficients and payloads shrink as blocks
/// resolve; the singleton queue is FIFO with deterministic order.
class PeelingState {
public:
    explicit PeelingState(std::size_t k);

    /// Adds one droplet, first reducing it by already-resolved blocks (each
    /// reduction is a counted XOR event).
    void add_droplet(const Droplet& d);

    /// Processes singletons until the queue is empty or `target` blocks are
    /// resolved in total.
    void peel(std::size_t target);
    void peel() { peel(k_); }

    std::size_t k() const { return k_; }
    std::size_t resolved_count() const { return resolved_count_; }
    const std::vector<bool>& resolved() const { return resolved_; }
    const std::vector<std::uint8_t>& block(std::size_t m) const { return blocks_[m]; }
    std::uint64_t xor_count() const { return xor_count_; }
    bool payload_mode() const { return payload_mode_; }

    /// Surviving droplets with nonzero residual coefficients, as reduced by
    /// the peeling done so far (support restricted to unresolved blocks).
    std::vector<Droplet> residual() const;

    /// Moves recovered blocks/flags into an outcome.
    void export_blocks(DecodeOutcome& out) const;

private:
    void resolve(std::size_t droplet_id);

    std::size_t k_;
    bool payload_mode_ = false;
    bool first_droplet_ = true;
    std::vector<BitVector> coeffs_;
    std::vector<std::vector<std::uint8_t>> payloads_;
    std::vector<int> residual_degree_;
    std::vector<std::vector<std::size_t>> block_adj_;
    std::deque<std::size_t> singletons_;
    std::vector<bool> resolved_;
    std::vector<std::vector<std::uint8_t>> blocks_;
    std::size_t resolved_count_ = 0;
    std::uint64_t xor_count_ = 0;
};

/// Belief-propagation (peeling) decoder. Success iff all k blocks resolve
/// before the singleton queue empties.
DecodeOutcome bp_decode(std::span<const Droplet> droplets, std::size_t k);

/// On-the-fly Gaussian elimination. Keeps a k-slot triangular pivot
/// structure, discarding redundant rows as they arrive; stops consuming
/// droplets once rank k is reached. Success iff rank(G) == k.
DecodeOutcome ofg_decode(std::span<const Droplet> droplets, std::size_t k);

/// Bootstrap-rigid hybrid: BP to exhaustion on all K_BR droplets, then OFG
/// over the BP-reduced residual system restricted to unresolved blocks.
/// Success iff rank(G) == k.
DecodeOutcome brh_decode(std::span<const Droplet> droplets, std::size_t k);

struct CrhOptions {
    std::size_t eta_c = 0;
    /// Droplet nodes contacted up front; 0 means k + 1.
    std::size_t k_init = 0;
    /// After eta_c is met the remaining blocks may come from either
    /// component. Default keeps peeling opportunistically and falls back to
    /// OFG; when false the BP phase stops at exactly eta_c.
    bool opportunistic_bp = true;
};

/// Complexity-rigid hybrid: contacts k_init of the available droplet nodes,
/// then fetches one more per retry until the BP phase has resolved at least
/// eta_c blocks and OFG closes the remainder. Hard failure once every
/// available node is consumed. Peeling state is resumed across fetches.
DecodeOutcome crh_decode(std::span<const Droplet> available, std::size_t k,
                         const CrhOptions& opts, Rng& rng);

}  // namespace ltstor
