#include "ltstor/rsd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltstor {

DegreeDistribution::DegreeDistribution(std::size_t k, double c, double delta)
    : k_(k), c_(c), delta_(delta) {
    if (k < 1) throw std::invalid_argument("rsd: k must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("rsd: c must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("rsd: delta must lie in (0, 1)");
    }

    const double kd = static_cast<double>(k);
    r_ = c * std::sqrt(kd) * std::log(kd / delta);
    spike_ = static_cast<std::size_t>(
        std::clamp(std::llround(kd / r_), 1ll, static_cast<long long>(k)));

    std::vector<double> mass(k);  // rho(d) + tau(d), d = 1..k
    mass[0] = 1.0 / kd;
    for (std::size_t d = 2; d <= k; ++d) {
        mass[d - 1] = 1.0 / (static_cast<double>(d) * static_cast<double>(d - 1));
    }
    for (std::size_t d = 1; d < spike_; ++d) {
        mass[d - 1] += r_ / (static_cast<double>(d) * kd);
    }
    mass[spike_ - 1] += (r_ / kd) * std::log(r_ / delta);

    beta_ = 0.0;
    for (double m : mass) beta_ += m;

    omega_.resize(k);
    cdf_.resize(k);
    double acc = 0.0;
    for (std::size_t d = 1; d <= k; ++d) {
        double w = mass[d - 1] / beta_;
        if (w < 0.0) {
            throw std::invalid_argument(
                "rsd: parameters give negative mass at the spike degree");
        }
        omega_[d - 1] = w;
        acc += w;
        cdf_[d - 1] = acc;
    }
    cdf_[k - 1] = 1.0;  // closes the table against rounding in the sum
}

std::size_t DegreeDistribution::sample(Rng& rng) const {
    const double u = rng.next_unit();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::size_t>(it - cdf_.begin()) + 1;
}

double DegreeDistribution::exact_mean_degree() const {
    double m = 0.0;
    for (std::size_t d = 1; d <= k_; ++d) {
        m += static_cast<double>(d) * omega_[d - 1];
    }
    return m;
}

}  // namespace ltstor
