#pragma once

#include <cstddef>
#include <vector>

#include "ltstor/rng.hpp"

namespace ltstor {

/// Robust Soliton degree distribution with parameters (k, c, delta).
///
/// The spike sits at round(k/R) clamped to [1, k]; the 1/(d*k) branch of the
/// tail applies to integer degrees strictly below the rounded spike. This
/// keeps the total mass intact when k/R is fractional or exceeds k.
class DegreeDistribution {
public:
    DegreeDistribution(std::size_t k, double c, double delta);

    std::size_t k() const { return k_; }
    double c() const { return c_; }
    double delta() const { return delta_; }
    double r() const { return r_; }
    double beta() const { return beta_; }
    std::size_t spike() const { return spike_; }

    /// Omega(d) for d in [1, k].
    double omega(std::size_t d) const { return omega_[d - 1]; }
    /// P(degree <= d).
    double cdf(std::size_t d) const { return cdf_[d - 1]; }

    /// One degree draw; empirical frequencies converge to omega.
    std::size_t sample(Rng& rng) const;

    /// Exact mean degree, sum of d * Omega(d).
    double exact_mean_degree() const;

private:
    std::size_t k_;
    double c_, delta_, r_, beta_;
    std::size_t spike_;
    std::vector<double> omega_;
    std::vector<double> cdf_;
};

/// Builds the distribution tables (alias for the constructor, matching the
/// encoder-facing vocabulary).
inline DegreeDistribution build_rsd(std::size_t k, double c, double delta) {
    return DegreeDistribution(k, c, delta);
}

}  // namespace ltstor
