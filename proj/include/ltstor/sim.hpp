#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ltstor/adversary.hpp"
#include "ltstor/decoders.hpp"

namespace ltstor {

struct AttackSpec {
    AttackStrategy strategy = AttackStrategy::Auto;
    double sigma = 0.0;
    double sigma0 = 0.0;
};

struct ExperimentConfig {
    std::size_t k = 0;
    std::size_t S = 0;
    double c = 0.1;
    double delta = 0.1;
    DecoderKind decoder = DecoderKind::Bp;
    /// Droplet nodes the bucket node contacts (BP/OFG/BRH).
    std::size_t K = 0;
    /// CRH parameters; k_init == 0 selects k + 1.
    std::size_t eta_c = 0;
    std::size_t k_init = 0;
    std::optional<AttackSpec> attack;
    std::size_t trials = 10000;
    std::uint64_t master_seed = 1;
    /// 0: take LTSTOR_THREADS from the environment, else hardware count.
    unsigned threads = 0;

    void validate() const;
};

struct TrialOutcome {
    bool success = false;
    std::size_t droplets_used = 0;
    std::uint64_t xor_count = 0;
    std::size_t eta_b = 0;
};

struct FailureRateResult {
    double failure_rate = 0.0;
    double stderr_value = 0.0;  // sqrt(p(1-p)/N)
    std::size_t trials = 0;
    std::size_t failures = 0;
    double mean_droplets_used = 0.0;
    double mean_xor = 0.0;
    double mean_eta_b = 0.0;
};

/// One Monte Carlo iteration: generate a fresh full node, apply the attack
/// (erased nodes become unreachable), let the bucket node sample only from
/// survivors, run the configured decoder. The trial's random stream is
/// derived from (master_seed, trial_index), so the outcome is a pure
/// function of the pair.
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial_index);

/// Aggregates trials 0..N-1. Counters are summed as integers, so the result
/// is byte-identical for any worker count.
FailureRateResult run_experiment(const ExperimentConfig& config);

struct AttackSweepPoint {
    double sigma = 0.0;
    double sigma0 = 0.0;
    double failure_rate = 0.0;
    double stderr_value = 0.0;
};

struct AttackOptimum {
    double sigma = 0.0;
    double sigma0 = 0.0;
    double failure_rate = 0.0;
    std::vector<AttackSweepPoint> sweep;
};

/// Cost-constrained attack sweep: sigma walks (0, nu/(S(1+zeta))] in `step`
/// increments, sigma0 = min(1, (nu - sigma*S*zeta)/S); every swept pair
/// satisfies sigma*S*(xi + zeta) <= nu. Returns the pair with the highest
/// failure rate, ties toward smaller sigma. The decoder and its parameters
/// come from `base`; base.attack.strategy selects the strategy (Auto
/// dispatches per decoder).
AttackOptimum optimize_attack(const ExperimentConfig& base, double nu,
                              double zeta, double step = 0.01);

}  // namespace ltstor
