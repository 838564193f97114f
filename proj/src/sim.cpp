#include "ltstor/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <thread>

#include "ltstor/cost_model.hpp"

namespace ltstor {

namespace {

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    if (const char* env = std::getenv("LTSTOR_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (k < 1) throw std::invalid_argument("config: k must be >= 1");
    if (S <= k) throw std::invalid_argument("config: S must exceed k");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    DegreeDistribution probe(k, c, delta);  // validates (c, delta)
    (void)probe;
    switch (decoder) {
        case DecoderKind::Bp:
        case DecoderKind::Ofg:
        case DecoderKind::Brh:
            if (K == 0) throw std::invalid_argument("config: K must be set");
            break;
        case DecoderKind::Crh:
            if (eta_c > k) throw std::invalid_argument("config: eta_c must be <= k");
            if (k_init != 0 && (k_init <= k || k_init >= S)) {
                throw std::invalid_argument("config: K_init must satisfy k < K_init < S");
            }
            break;
    }
    if (attack) {
        if (!(attack->sigma > 0.0 && attack->sigma <= 1.0)) {
            throw std::invalid_argument("config: sigma must lie in (0, 1]");
        }
        if (attack->strategy != AttackStrategy::Blind &&
            !(attack->sigma0 >= attack->sigma && attack->sigma0 <= 1.0)) {
            throw std::invalid_argument("config: sigma0 must lie in [sigma, 1]");
        }
    }
}

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial_index) {
    Rng rng(derive_seed(config.master_seed, trial_index));
    const DegreeDistribution dist(config.k, config.c, config.delta);

    // Step 1: droplet generation.
    FullNode node = generate_full_node(config.k, config.S, dist, rng);

    // Step 2: threat execution; erased nodes drop out of reach.
    std::vector<Droplet> survivors;
    if (config.attack) {
        AttackPlan plan = attack_with_strategy(
            config.attack->strategy, config.decoder, config.eta_c, node,
            config.attack->sigma, config.attack->sigma0, rng);
        survivors.reserve(node.S - plan.erased.size());
        auto it = plan.erased.begin();
        for (std::size_t i = 0; i < node.S; ++i) {
            if (it != plan.erased.end() && *it == i) {
                ++it;
                continue;
            }
            survivors.push_back(std::move(node.droplet_nodes[i]));
        }
    } else {
        survivors = std::move(node.droplet_nodes);
    }

    // Step 3: reconstruction from the live nodes only.
    TrialOutcome out;
    DecodeOutcome dec;
    switch (config.decoder) {
        case DecoderKind::Bp:
        case DecoderKind::Ofg:
        case DecoderKind::Brh: {
            if (survivors.size() < config.K) {
                // Not enough reachable nodes: automatic failure.
                out.droplets_used = survivors.size();
                return out;
            }
            std::vector<Droplet> picked;
            picked.reserve(config.K);
            for (std::size_t i : rng.sample_distinct(survivors.size(), config.K)) {
                picked.push_back(survivors[i]);
            }
            if (config.decoder == DecoderKind::Bp) {
                dec = bp_decode(picked, config.k);
            } else if (config.decoder == DecoderKind::Ofg) {
                dec = ofg_decode(picked, config.k);
            } else {
                dec = brh_decode(picked, config.k);
            }
            break;
        }
        case DecoderKind::Crh: {
            const std::size_t k_init =
                config.k_init == 0 ? config.k + 1 : config.k_init;
            if (survivors.size() < k_init) {
                out.droplets_used = survivors.size();
                return out;
            }
            CrhOptions opts;
            opts.eta_c = config.eta_c;
            opts.k_init = k_init;
            dec = crh_decode(survivors, config.k, opts, rng);
            break;
        }
    }
    out.success = dec.success;
    out.droplets_used = dec.droplets_used;
    out.xor_count = dec.xor_count;
    out.eta_b = dec.eta_b;
    return out;
}

FailureRateResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const std::size_t n = config.trials;
    const unsigned threads = std::min<std::size_t>(resolve_threads(config.threads), n);

    struct Partial {
        std::uint64_t failures = 0;
        std::uint64_t used = 0;
        std::uint64_t xors = 0;
        std::uint64_t eta = 0;
    };
    std::vector<Partial> parts(std::max(1u, threads));

    auto run_range = [&](unsigned worker) {
        Partial& p = parts[worker];
        for (std::size_t t = worker; t < n; t += threads) {
            TrialOutcome o = run_trial(config, t);
            if (!o.success) ++p.failures;
            p.used += o.droplets_used;
            p.xors += o.xor_count;
            p.eta += o.eta_b;
        }
    };

    if (threads <= 1) {
        run_range(0);
    } else {
        std::vector<std::future<void>> futs;
        futs.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            futs.push_back(std::async(std::launch::async, run_range, w));
        }
        for (auto& f : futs) f.get();
    }

    Partial total;
    for (const auto& p : parts) {
        total.failures += p.failures;
        total.used += p.used;
        total.xors += p.xors;
        total.eta += p.eta;
    }

    FailureRateResult r;
    r.trials = n;
    r.failures = total.failures;
    r.failure_rate = static_cast<double>(total.failures) / static_cast<double>(n);
    r.stderr_value =
        std::sqrt(r.failure_rate * (1.0 - r.failure_rate) / static_cast<double>(n));
    r.mean_droplets_used = static_cast<double>(total.used) / static_cast<double>(n);
    r.mean_xor = static_cast<double>(total.xors) / static_cast<double>(n);
    r.mean_eta_b = static_cast<double>(total.eta) / static_cast<double>(n);
    return r;
}

AttackOptimum optimize_attack(const ExperimentConfig& base, double nu,
                              double zeta, double step) {
    if (!(nu > 0.0)) throw std::invalid_argument("nu must be > 0");
    if (!(zeta >= 1.0)) throw std::invalid_argument("zeta must be >= 1");
    if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");

    const double S = static_cast<double>(base.S);
    const double sigma_max = nu / (S * (1.0 + zeta));

    AttackOptimum best;
    for (std::size_t i = 1;; ++i) {
        const double sigma = static_cast<double>(i) * step;
        if (sigma > sigma_max + 1e-12) break;
        const double sigma0 = std::min(1.0, (nu - sigma * S * zeta) / S);
        if (sigma > sigma0 + 1e-12) continue;

        ExperimentConfig cfg = base;
        if (!cfg.attack) cfg.attack = AttackSpec{};
        cfg.attack->sigma = sigma;
        cfg.attack->sigma0 = sigma0;
        cfg.master_seed = derive_seed(base.master_seed, 0x5eedu + i);
        FailureRateResult r = run_experiment(cfg);

        best.sweep.push_back({sigma, sigma0, r.failure_rate, r.stderr_value});
        if (best.sweep.size() == 1 || r.failure_rate > best.failure_rate) {
            best.sigma = sigma;
            best.sigma0 = sigma0;
            best.failure_rate = r.failure_rate;
        }
    }
    if (best.sweep.empty()) {
        throw std::invalid_argument("attack budget admits no feasible (sigma, sigma0)");
    }
    return best;
}

}  // namespace ltstor
