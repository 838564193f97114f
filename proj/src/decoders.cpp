#include "ltstor/decoders.hpp"

#include <optional>
#include <stdexcept>

namespace ltstor {

PeelingState::PeelingState(std::size_t k)
    : k_(k),
      block_adj_(k),
      resolved_(k, false),
      blocks_(k) {}

void PeelingState::add_droplet(const Droplet& d) {
    if (d.coeffs.size() != k_) {
        throw std::invalid_argument("droplet coefficient length does not match k");
    }
    if (first_droplet_) {
        payload_mode_ = !d.symbolic();
        first_droplet_ = false;
    } else if (payload_mode_ == d.symbolic()) {
        throw std::invalid_argument("mixed symbolic and payload droplets");
    }

    std::size_t id = coeffs_.size();
    BitVector coeffs = d.coeffs;
    std::vector<std::uint8_t> payload = d.payload;

    // Peel already-resolved blocks out of the newcomer.
    for (std::size_t m = coeffs.first_set(); m != BitVector::npos;
         m = coeffs.next_set(m + 1)) {
        if (!resolved_[m]) continue;
        coeffs.reset(m);
        if (payload_mode_) {
            const auto& b = blocks_[m];
            for (std::size_t j = 0; j < b.size(); ++j) payload[j] ^= b[j];
        }
        ++xor_count_;
    }

    int deg = coeffs.popcount();
    coeffs_.push_back(std::move(coeffs));
    payloads_.push_back(std::move(payload));
    residual_degree_.push_back(deg);
    for (std::size_t m = coeffs_[id].first_set(); m != BitVector::npos;
         m = coeffs_[id].next_set(m + 1)) {
        block_adj_[m].push_back(id);
    }
    if (deg == 1) singletons_.push_back(id);
}

void PeelingState::resolve(std::size_t id) {
    std::size_t m = coeffs_[id].first_set();
    resolved_[m] = true;
    ++resolved_count_;
    if (payload_mode_) blocks_[m] = payloads_[id];
    // The singleton's own edge is a plain assignment, not an XOR.
    coeffs_[id].reset(m);
    residual_degree_[id] = 0;

    for (std::size_t j : block_adj_[m]) {
        if (j == id || !coeffs_[j].test(m)) continue;
        coeffs_[j].reset(m);
        if (payload_mode_) {
            const auto& b = blocks_[m];
            for (std::size_t t = 0; t < b.size(); ++t) payloads_[j][t] ^= b[t];
        }
        ++xor_count_;
        if (--residual_degree_[j] == 1) singletons_.push_back(j);
    }
    block_adj_[m].clear();
}

void PeelingState::peel(std::size_t target) {
    while (!singletons_.empty() && resolved_count_ < target) {
        std::size_t id = singletons_.front();
        singletons_.pop_front();
        if (residual_degree_[id] != 1) continue;  // went stale
        resolve(id);
    }
}

std::vector<Droplet> PeelingState::residual() const {
    std::vector<Droplet> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (residual_degree_[i] == 0) continue;
        Droplet d;
        d.coeffs = coeffs_[i];
        if (payload_mode_) d.payload = payloads_[i];
        d.degree = residual_degree_[i];
        out.push_back(std::move(d));
    }
    return out;
}

void PeelingState::export_blocks(DecodeOutcome& out) const {
    out.recovered = resolved_;
    if (payload_mode_) out.blocks = blocks_;
}

namespace {

/// k-slot triangular pivot structure used by the OFG decoder and the OFG
/// phase of the hybrids. Slot index = pivot column (first set coefficient).
class OfgEliminator {
public:
    OfgEliminator(std::size_t k, bool payload_mode)
        : k_(k), payload_mode_(payload_mode), slots_(k) {}

    std::size_t pivots() const { return pivots_; }
    std::uint64_t xor_count() const { return xor_count_; }

    /// Reduces the row against existing pivots; inserts it when nonzero,
    /// discards it when redundant.
    void insert(Droplet row) {
        for (std::size_t p = row.coeffs.first_set(); p != BitVector::npos;
             p = row.coeffs.first_set()) {
            auto& slot = slots_[p];
            if (!slot) {
                row.degree = row.coeffs.popcount();
                slot = std::move(row);
                ++pivots_;
                return;
            }
            row.coeffs.xor_with(slot->coeffs);
            if (payload_mode_) {
                for (std::size_t j = 0; j < row.payload.size(); ++j) {
                    row.payload[j] ^= slot->payload[j];
                }
            }
            ++xor_count_;
        }
        // Reduced to zero: redundant equation, dropped on the fly.
    }

    /// Requires a complete triangle over the populated columns. Clears the
    /// above-pivot coefficients bottom-up, leaving unit rows.
    void back_substitute() {
        for (std::size_t col = k_; col-- > 0;) {
            auto& slot = slots_[col];
            if (!slot) continue;
            for (std::size_t q = slot->coeffs.next_set(col + 1);
                 q != BitVector::npos; q = slot->coeffs.next_set(q)) {
                const auto& upper = slots_[q];
                slot->coeffs.xor_with(upper->coeffs);
                if (payload_mode_) {
                    for (std::size_t j = 0; j < slot->payload.size(); ++j) {
                        slot->payload[j] ^= upper->payload[j];
                    }
                }
                ++xor_count_;
            }
        }
    }

    /// After back-substitution, slot `col` holds block `col` exactly.
    void export_blocks(DecodeOutcome& out) const {
        for (std::size_t col = 0; col < k_; ++col) {
            if (!slots_[col]) continue;
            out.recovered[col] = true;
            if (payload_mode_) out.blocks[col] = slots_[col]->payload;
        }
    }

private:
    std::size_t k_;
    bool payload_mode_;
    std::vector<std::optional<Droplet>> slots_;
    std::size_t pivots_ = 0;
    std::uint64_t xor_count_ = 0;
};

bool droplets_payload_mode(std::span<const Droplet> droplets) {
    return !droplets.empty() && !droplets.front().symbolic();
}

DecodeOutcome make_outcome(std::size_t k, bool payload_mode) {
    DecodeOutcome out;
    out.recovered.assign(k, false);
    if (payload_mode) out.blocks.resize(k);
    return out;
}

}  // namespace

DecodeOutcome bp_decode(std::span<const Droplet> droplets, std::size_t k) {
    DecodeOutcome out = make_outcome(k, droplets_payload_mode(droplets));
    out.droplets_used = droplets.size();
    if (droplets.empty()) return out;

    PeelingState state(k);
    for (const auto& d : droplets) state.add_droplet(d);
    state.peel();

    out.eta_b = state.resolved_count();
    out.xor_count = state.xor_count();
    out.success = state.resolved_count() == k;
    state.export_blocks(out);
    return out;
}

DecodeOutcome ofg_decode(std::span<const Droplet> droplets, std::size_t k) {
    const bool payload_mode = droplets_payload_mode(droplets);
    DecodeOutcome out = make_outcome(k, payload_mode);
    if (droplets.empty()) {
        out.success = k == 0;
        return out;
    }

    OfgEliminator elim(k, payload_mode);
    std::size_t used = 0;
    for (const auto& d : droplets) {
        if (d.coeffs.size() != k) {
            throw std::invalid_argument("droplet coefficient length does not match k");
        }
        elim.insert(d);
        ++used;
        if (elim.pivots() == k) break;
    }
    out.droplets_used = used;
    out.eta_b = 0;
    if (elim.pivots() == k) {
        elim.back_substitute();
        elim.export_blocks(out);
        out.success = true;
    }
    out.xor_count = elim.xor_count();
    return out;
}

DecodeOutcome brh_decode(std::span<const Droplet> droplets, std::size_t k) {
    DecodeOutcome out = make_outcome(k, droplets_payload_mode(droplets));
    out.droplets_used = droplets.size();
    if (droplets.empty()) return out;

    PeelingState state(k);
    for (const auto& d : droplets) state.add_droplet(d);
    state.peel();
    out.eta_b = state.resolved_count();
    out.xor_count = state.xor_count();
    state.export_blocks(out);

    if (state.resolved_count() == k) {
        out.success = true;
        return out;
    }

    // Non-singletons remaining in the BP part, handed to the OFG counterpart
    // over the unresolved columns.
    OfgEliminator elim(k, state.payload_mode());
    const std::size_t need = k - state.resolved_count();
    for (auto& r : state.residual()) {
        elim.insert(std::move(r));
        if (elim.pivots() == need) break;
    }
    if (elim.pivots() == need) {
        elim.back_substitute();
        elim.export_blocks(out);
        out.success = true;
    }
    out.xor_count += elim.xor_count();
    return out;
}

DecodeOutcome crh_decode(std::span<const Droplet> available, std::size_t k,
                         const CrhOptions& opts, Rng& rng) {
    if (opts.eta_c > k) throw std::invalid_argument("crh: eta_c must lie in [0, k]");
    const std::size_t k_init = opts.k_init == 0 ? k + 1 : opts.k_init;
    if (k_init <= k) throw std::invalid_argument("crh: K_init must exceed k");

    DecodeOutcome out = make_outcome(k, droplets_payload_mode(available));

    // Contact order: uniform random permutation of the reachable nodes.
    std::vector<std::size_t> order(available.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);

    if (available.size() < k_init) {
        out.droplets_used = available.size();
        return out;
    }

    PeelingState state(k);
    std::size_t contacted = 0;
    for (; contacted < k_init; ++contacted) {
        state.add_droplet(available[order[contacted]]);
    }

    std::uint64_t ofg_attempt_xor = 0;  // failed attempts still cost work
    while (true) {
        if (opts.opportunistic_bp) {
            state.peel();
        } else {
            state.peel(opts.eta_c);
        }
        if (state.resolved_count() >= opts.eta_c) {
            OfgEliminator elim(k, state.payload_mode());
            const std::size_t need = k - state.resolved_count();
            for (auto& r : state.residual()) {
                elim.insert(std::move(r));
                if (elim.pivots() == need) break;
            }
            if (elim.pivots() == need) {
                elim.back_substitute();
                state.export_blocks(out);
                elim.export_blocks(out);
                out.success = true;
                out.eta_b = state.resolved_count();
                out.droplets_used = contacted;
                out.xor_count =
                    state.xor_count() + ofg_attempt_xor + elim.xor_count();
                return out;
            }
            ofg_attempt_xor += elim.xor_count();
        }
        if (contacted == available.size()) {
            // Every reachable droplet node consumed.
            out.eta_b = state.resolved_count();
            out.droplets_used = contacted;
            out.xor_count = state.xor_count() + ofg_attempt_xor;
            state.export_blocks(out);
            return out;
        }
        state.add_droplet(available[order[contacted]]);
        ++contacted;
    }
}

}  // namespace ltstor
