#pragma once

#include <cstddef>
#include <vector>

#include "ltstor/decoders.hpp"
#include "ltstor/lt.hpp"

namespace ltstor {

enum class AttackStrategy { Blind, Degree, Score, MinRank, Auto };

/// Read/erase fractions plus the adversary's cost parameters. c_r is
/// normalized to 1; zeta = c_e / c_r >= 1 (cheaper-to-erase regimes would
/// mean the coded chain is already broken).
struct AttackModel {
    double sigma0 = 0.0;
    double sigma = 0.0;
    double zeta = 1.0;
    double nu = 0.0;

    double xi() const { return sigma0 / sigma; }
    void validate() const;
};

/// Fractional node counts round half-up, keeping sigma*S + (sigma0-sigma)*S
/// close to sigma0*S.
std::size_t round_count(double fraction, std::size_t S);

/// The sigma0*S droplet nodes whose coefficient rows the adversary has read.
/// Indices are ascending full-node positions; rows/degrees align with them.
struct ReadSet {
    std::vector<std::size_t> indices;
    std::vector<BitVector> rows;
    std::vector<int> degrees;

    std::size_t size() const { return indices.size(); }
};

ReadSet sample_read_set(const FullNode& node, double sigma0, Rng& rng);

/// Erasure choice of one strategy: round(sigma*S) node indices, a subset of
/// the read set for every non-blind strategy.
struct AttackPlan {
    AttackStrategy strategy = AttackStrategy::Blind;
    std::vector<std::size_t> erased;  // ascending
};

/// Oblivious baseline: a uniform sigma-fraction of all S nodes.
AttackPlan attack_blind(std::size_t S, double sigma, Rng& rng);

/// Sorts the read set by (degree ascending, node index ascending) and erases
/// the first erase_count nodes.
AttackPlan attack_degree(const ReadSet& read, std::size_t erase_count);

/// score(x) = (1/2)^(deg(x)-1) + sum over read droplets y of strictly larger
/// degree whose neighbours contain x's, of (1/2)^(deg(y)-1).
std::vector<double> compute_scores(const ReadSet& read);

/// Sorts by (score descending, node index ascending), erases the first
/// erase_count.
AttackPlan attack_score(const ReadSet& read, std::size_t erase_count);

/// Greedy low-rank survivor selection: seeds with the first read row, then
/// fills survivor slots with rows that leave the rank unchanged whenever one
/// exists. When forced to take an independent row it picks, among unused
/// rows, the one that makes the most other unused rows dependent (ties:
/// smaller degree, then smaller node index). Erases the complement.
AttackPlan attack_min_rank(const ReadSet& read, std::size_t erase_count);

/// Strategy dispatch per victim decoder: BP -> score, OFG/BRH -> min-rank,
/// CRH -> score when eta_c > 0, else min-rank.
AttackPlan attack_for_decoder(DecoderKind kind, std::size_t eta_c,
                              const ReadSet& read, std::size_t erase_count);

AttackPlan attack_with_strategy(AttackStrategy strategy, DecoderKind kind,
                                std::size_t eta_c, const FullNode& node,
                                double sigma, double sigma0, Rng& rng);

/// c_r * round(sigma0*S) + c_e * round(sigma*S); equals the normalized form
/// sigma*S*(xi + zeta) up to rounding when c_r = 1.
double attack_cost(double sigma0, double sigma, std::size_t S, double c_r,
                   double c_e);

}  // namespace ltstor
