#include "ltstor/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "ltstor/lt.hpp"

namespace ltstor {

namespace {

void check_params(std::size_t k, double c, double delta) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
}

double log_term(std::size_t k, double c, double delta) {
    const double kd = static_cast<double>(k);
    return std::log(c * std::pow(kd, 1.5) * std::log(kd / delta) / delta) + 1.577;
}

double log_choose(std::size_t n, std::size_t r) {
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(r) + 1.0) -
           std::lgamma(static_cast<double>(n - r) + 1.0);
}

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    if (const char* env = std::getenv("LTSTOR_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Evaluates fn(i) for i in [0, n) across workers; each call must be
/// independent (seed-derived streams), so the schedule cannot matter.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::min<std::size_t>(resolve_threads(threads), n == 0 ? 1 : n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        futs.push_back(std::async(std::launch::async, [&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        }));
    }
    for (auto& f : futs) f.get();
}

}  // namespace

double k_bp(std::size_t k, double c, double delta) {
    check_params(k, c, delta);
    const double kd = static_cast<double>(k);
    const double ln = std::log(kd / delta);
    return kd + c * std::sqrt(kd) * ln * ln;
}

double avg_degree(const DegreeDistribution& dist) {
    return log_term(dist.k(), dist.c(), dist.delta()) / dist.beta();
}

double avg_degree(std::size_t k, double c, double delta) {
    return avg_degree(DegreeDistribution(k, c, delta));
}

double c_bp(std::size_t k, double c, double delta) {
    check_params(k, c, delta);
    return static_cast<double>(k) * log_term(k, c, delta);
}

PfBound::PfBound(const DegreeDistribution& dist) : k_(dist.k()) {
    log_choose_k_.resize(k_ + 1);
    q_.resize(k_ + 1);
    for (std::size_t w = 1; w <= k_; ++w) {
        log_choose_k_[w] = log_choose(k_, w);
        // q_w: probability that a droplet's coefficient row has even overlap
        // with a fixed weight-w set; the [1 - (-1)^(1-l)] factor zeroes the
        // odd-l terms and doubles the even ones, cancelling the leading 1/2.
        double q = 0.0;
        for (std::size_t d = 1; d <= k_; ++d) {
            const double om = dist.omega(d);
            if (om <= 0.0) continue;
            double even = 0.0;
            for (std::size_t l = 0; l <= d; l += 2) {
                if (l > w || d - l > k_ - w) continue;
                even += std::exp(log_choose(w, l) + log_choose(k_ - w, d - l) -
                                 log_choose(k_, d));
            }
            q += om * even;
        }
        q_[w] = std::min(q, 1.0);
    }
}

double PfBound::operator()(double epsilon) const {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("pf bound requires epsilon > 0");
    }
    const double exponent = static_cast<double>(k_) * (1.0 + epsilon);
    double total = 0.0;
    double comp = 0.0;  // Kahan compensation
    for (std::size_t w = 1; w <= k_; ++w) {
        if (q_[w] <= 0.0) continue;
        const double term = std::exp(log_choose_k_[w] + exponent * std::log(q_[w]));
        const double y = term - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return std::clamp(total, 0.0, 1.0);
}

double pf_upper_bound(std::size_t k, double epsilon, const DegreeDistribution& dist) {
    if (dist.k() != k) throw std::invalid_argument("pf bound: k does not match dist");
    return PfBound(dist)(epsilon);
}

std::size_t k_ofg(std::size_t k, double delta, const DegreeDistribution& dist,
                  std::size_t m_cap) {
    if (m_cap == 0) m_cap = 5 * k;
    PfBound pf(dist);
    for (std::size_t m = 1; m <= m_cap; ++m) {
        if (pf(static_cast<double>(m) / static_cast<double>(k)) <= delta) {
            return k + m;
        }
    }
    throw std::runtime_error("k_ofg: P_F bound does not reach delta within m_cap");
}

BrhStats estimate_brh_stats(std::size_t k, std::size_t k_br,
                            const DegreeDistribution& dist, std::size_t trials,
                            Rng& rng) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    BrhStats s;
    s.k_br = k_br;
    s.trials = trials;
    double sum_eta = 0.0, sum_eta2 = 0.0, sum_sq = 0.0, sum_sq2 = 0.0;
    std::vector<Droplet> droplets(k_br);
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto& d : droplets) d = encode_droplet(k, dist.sample(rng), rng);
        PeelingState state(k);
        for (const auto& d : droplets) state.add_droplet(d);
        state.peel();
        const double eta = static_cast<double>(state.resolved_count());
        const double res = static_cast<double>(k) - eta;
        sum_eta += eta;
        sum_eta2 += eta * eta;
        sum_sq += res * res;
        sum_sq2 += res * res * res * res;
    }
    const double n = static_cast<double>(trials);
    s.mean_eta_b = sum_eta / n;
    s.mean_sq_residual = sum_sq / n;
    s.sample_var_eta = std::max(0.0, sum_eta2 / n - s.mean_eta_b * s.mean_eta_b);
    s.sample_var_sq =
        std::max(0.0, sum_sq2 / n - s.mean_sq_residual * s.mean_sq_residual);
    return s;
}

CrhStats estimate_crh_stats(std::size_t k, std::size_t S, std::size_t eta_c,
                            std::size_t k_init, const DegreeDistribution& dist,
                            std::size_t trials, Rng& rng) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (S <= k) throw std::invalid_argument("crh stats require S > k");
    CrhStats s;
    s.eta_c = eta_c;
    s.trials = trials;
    CrhOptions opts;
    opts.eta_c = eta_c;
    opts.k_init = k_init;
    double sum_u = 0.0, sum_u2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        FullNode node = generate_full_node(k, S, dist, rng);
        DecodeOutcome out = crh_decode(node.droplet_nodes, k, opts, rng);
        if (!out.success) ++s.failures;
        const double u = static_cast<double>(out.droplets_used);
        sum_u += u;
        sum_u2 += u * u;
    }
    const double n = static_cast<double>(trials);
    s.k_cr_av = sum_u / n;
    s.sample_var_used = std::max(0.0, sum_u2 / n - s.k_cr_av * s.k_cr_av);
    return s;
}

double mirroring_cost_bp(double k_bp_value, double d, double alpha) {
    return k_bp_value * d + alpha * k_bp_value;
}

double mirroring_cost_ofg(std::size_t k, std::size_t k_ofg_value, double alpha) {
    return static_cast<double>(k) * static_cast<double>(k) +
           alpha * static_cast<double>(k_ofg_value);
}

double mirroring_cost_brh(const BrhStats& s, double d, std::size_t k, double alpha) {
    const double kbr = static_cast<double>(s.k_br);
    return kbr * d * s.mean_eta_b / static_cast<double>(k) + s.mean_sq_residual +
           alpha * kbr;
}

double mirroring_cost_crh(const CrhStats& s, double d, std::size_t k, double alpha) {
    const double res = static_cast<double>(k) - static_cast<double>(s.eta_c);
    return s.k_cr_av * d * static_cast<double>(s.eta_c) / static_cast<double>(k) +
           res * res + alpha * s.k_cr_av;
}

double mirroring_cost(DecoderKind kind, double alpha, const MirroringInputs& in) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    switch (kind) {
        case DecoderKind::Bp:
            if (in.k_bp <= 0.0 || in.d <= 0.0) break;
            return mirroring_cost_bp(in.k_bp, in.d, alpha);
        case DecoderKind::Ofg:
            if (in.k == 0 || in.k_ofg == 0) break;
            return mirroring_cost_ofg(in.k, in.k_ofg, alpha);
        case DecoderKind::Brh:
            if (in.brh == nullptr || in.k == 0 || in.d <= 0.0) break;
            return mirroring_cost_brh(*in.brh, in.d, in.k, alpha);
        case DecoderKind::Crh:
            if (in.crh == nullptr || in.k == 0 || in.d <= 0.0) break;
            return mirroring_cost_crh(*in.crh, in.d, in.k, alpha);
    }
    throw std::invalid_argument("mirroring_cost: inputs do not match decoder kind");
}

std::vector<BrhStats> brh_stats_grid(std::size_t k, const DegreeDistribution& dist,
                                     std::size_t k_lo, std::size_t k_hi,
                                     std::size_t trials, std::uint64_t seed,
                                     unsigned threads) {
    if (k_lo > k_hi) throw std::invalid_argument("empty K_BR range");
    std::vector<BrhStats> grid(k_hi - k_lo + 1);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        Rng rng(derive_seed(seed, k_lo + i));
        grid[i] = estimate_brh_stats(k, k_lo + i, dist, trials, rng);
    });
    return grid;
}

std::vector<CrhStats> crh_stats_grid(std::size_t k, std::size_t S,
                                     std::size_t k_init,
                                     const DegreeDistribution& dist,
                                     std::size_t trials, std::uint64_t seed,
                                     unsigned threads) {
    std::vector<CrhStats> grid(k + 1);
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        grid[i] = estimate_crh_stats(k, S, i, k_init, dist, trials, rng);
    });
    return grid;
}

BrhOptimum pick_brh_optimum(std::span<const BrhStats> grid, double d,
                            std::size_t k, double alpha) {
    if (grid.empty()) throw std::invalid_argument("empty BRH grid");
    BrhOptimum best;
    bool have = false;
    for (const auto& s : grid) {
        const double m = mirroring_cost_brh(s, d, k, alpha);
        if (!have || m < best.m_min) {
            have = true;
            best.k_min = s.k_br;
            best.m_min = m;
            // Var of per-trial cost K*D*eta/k + (k-eta)^2 bounded by the sum
            // of the two component variances plus their covariance; the
            // conservative (a+b)^2 <= 2a^2+2b^2 form is enough here.
            const double w = static_cast<double>(s.k_br) * d / static_cast<double>(k);
            const double var =
                2.0 * (w * w * s.sample_var_eta + s.sample_var_sq);
            best.m_min_stderr = std::sqrt(var / static_cast<double>(s.trials));
        }
    }
    return best;
}

CrhOptimum pick_crh_optimum(std::span<const CrhStats> grid, double d,
                            std::size_t k, double alpha) {
    if (grid.empty()) throw std::invalid_argument("empty CRH grid");
    CrhOptimum best;
    bool have = false;
    for (const auto& s : grid) {
        const double m = mirroring_cost_crh(s, d, k, alpha);
        if (!have || m < best.m_min) {
            have = true;
            best.eta_min = s.eta_c;
            best.m_min = m;
            const double w =
                d * static_cast<double>(s.eta_c) / static_cast<double>(k) + alpha;
            best.m_min_stderr =
                std::sqrt(w * w * s.sample_var_used / static_cast<double>(s.trials));
        }
    }
    return best;
}

BrhOptimum solve_problem_brh(double alpha, std::size_t k,
                             const DegreeDistribution& dist, std::size_t k_lo,
                             std::size_t k_hi, std::size_t trials,
                             std::uint64_t seed, unsigned threads) {
    auto grid = brh_stats_grid(k, dist, k_lo, k_hi, trials, seed, threads);
    return pick_brh_optimum(grid, avg_degree(dist), k, alpha);
}

CrhOptimum solve_problem_crh(double alpha, std::size_t k, std::size_t S,
                             const DegreeDistribution& dist, std::size_t trials,
                             std::uint64_t seed, unsigned threads) {
    auto grid = crh_stats_grid(k, S, 0, dist, trials, seed, threads);
    return pick_crh_optimum(grid, avg_degree(dist), k, alpha);
}

}  // namespace ltstor
