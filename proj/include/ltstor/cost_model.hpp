#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ltstor/decoders.hpp"
#include "ltstor/rsd.hpp"

namespace ltstor {

/// Average bootstrap overhead of the BP decoder,
/// K_BP = k + c*sqrt(k)*ln^2(k/delta).
double k_bp(std::size_t k, double c, double delta);

/// Closed-form approximate mean droplet degree,
/// D = (1/beta) * (ln(c*k^1.5*ln(k/delta)/delta) + 1.577).
double avg_degree(const DegreeDistribution& dist);
double avg_degree(std::size_t k, double c, double delta);

/// Average BP computational complexity,
/// C_BP = k * (ln(c*k^1.5*ln(k/delta)/delta) + 1.577); equals k*beta*D.
double c_bp(std::size_t k, double c, double delta);

/// Upper bound on the decoding failure probability of rank-based decoding at
/// fractional overhead epsilon. The per-weight orthogonality probabilities
/// q_w depend only on the distribution, so they are precomputed once;
/// binomials run through log-gamma to survive k = 500.
class PfBound {
public:
    explicit PfBound(const DegreeDistribution& dist);

    /// P_F at overhead epsilon > 0, clamped to [0, 1] for reporting.
    double operator()(double epsilon) const;

private:
    std::size_t k_;
    std::vector<double> log_choose_k_;  // log C(k, w), w = 1..k
    std::vector<double> q_;             // q_w, w = 1..k
};

double pf_upper_bound(std::size_t k, double epsilon, const DegreeDistribution& dist);

/// Bootstrap overhead of the OFG decoder: k + m for the smallest integer m
/// with P_F(m/k) <= delta. Throws when no m <= m_cap qualifies
/// (m_cap = 0 selects the default 5k).
std::size_t k_ofg(std::size_t k, double delta, const DegreeDistribution& dist,
                  std::size_t m_cap = 0);

/// Monte Carlo estimates of the BP phase of a BRH decoder at fixed K_BR.
struct BrhStats {
    std::size_t k_br = 0;
    double mean_eta_b = 0.0;
    double mean_sq_residual = 0.0;  // E[(k - eta_B)^2]
    std::size_t trials = 0;
    /// Sample stderr of the per-trial complexity K_BR*D*eta/k + (k-eta)^2;
    /// filled by the cost helpers when D is known.
    double sample_var_eta = 0.0;
    double sample_var_sq = 0.0;
};

BrhStats estimate_brh_stats(std::size_t k, std::size_t k_br,
                            const DegreeDistribution& dist, std::size_t trials,
                            Rng& rng);

/// Monte Carlo estimate of the CRH decoder's average bootstrap overhead at
/// fixed eta_c. Failed trials (all S nodes consumed) contribute S.
struct CrhStats {
    std::size_t eta_c = 0;
    double k_cr_av = 0.0;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double sample_var_used = 0.0;
};

CrhStats estimate_crh_stats(std::size_t k, std::size_t S, std::size_t eta_c,
                            std::size_t k_init, const DegreeDistribution& dist,
                            std::size_t trials, Rng& rng);

// Normalized mirroring costs (c1 = 1, alpha = c2/c1).
double mirroring_cost_bp(double k_bp_value, double d, double alpha);
double mirroring_cost_ofg(std::size_t k, std::size_t k_ofg_value, double alpha);
double mirroring_cost_brh(const BrhStats& s, double d, std::size_t k, double alpha);
double mirroring_cost_crh(const CrhStats& s, double d, std::size_t k, double alpha);

/// Dispatcher over the four cost expressions; exactly the inputs for `kind`
/// must be populated.
struct MirroringInputs {
    std::size_t k = 0;
    double d = 0.0;
    double k_bp = 0.0;         // Bp
    std::size_t k_ofg = 0;     // Ofg
    const BrhStats* brh = nullptr;
    const CrhStats* crh = nullptr;
};
double mirroring_cost(DecoderKind kind, double alpha, const MirroringInputs& in);

/// Per-point BRH statistics over the integer grid [k_lo, k_hi]. Each grid
/// point runs on its own seed-derived stream, so evaluation order (or
/// parallelism) cannot change the result.
std::vector<BrhStats> brh_stats_grid(std::size_t k, const DegreeDistribution& dist,
                                     std::size_t k_lo, std::size_t k_hi,
                                     std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 0);

/// Per-point CRH statistics for eta_c = 0..k.
std::vector<CrhStats> crh_stats_grid(std::size_t k, std::size_t S,
                                     std::size_t k_init,
                                     const DegreeDistribution& dist,
                                     std::size_t trials, std::uint64_t seed,
                                     unsigned threads = 0);

struct BrhOptimum {
    std::size_t k_min = 0;
    double m_min = 0.0;
    double m_min_stderr = 0.0;
};
struct CrhOptimum {
    std::size_t eta_min = 0;
    double m_min = 0.0;
    double m_min_stderr = 0.0;
};

/// Argmin of M_BR over precomputed grid stats, ties toward smaller K_BR.
BrhOptimum pick_brh_optimum(std::span<const BrhStats> grid, double d,
                            std::size_t k, double alpha);
/// Argmin of M_CR over precomputed grid stats, ties toward smaller eta_c.
CrhOptimum pick_crh_optimum(std::span<const CrhStats> grid, double d,
                            std::size_t k, double alpha);

/// Problem 1: minimize M_BR(alpha) over K_BR in [k_lo, k_hi]
/// (callers pass [K_OFG, ceil(K_BP)]).
BrhOptimum solve_problem_brh(double alpha, std::size_t k,
                             const DegreeDistribution& dist, std::size_t k_lo,
                             std::size_t k_hi, std::size_t trials,
                             std::uint64_t seed, unsigned threads = 0);

/// Problem 2: minimize M_CR(alpha) over eta_c in [0, k].
CrhOptimum solve_problem_crh(double alpha, std::size_t k, std::size_t S,
                             const DegreeDistribution& dist, std::size_t trials,
                             std::uint64_t seed, unsigned threads = 0);

}  // namespace ltstor
