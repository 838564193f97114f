#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ltstor/rsd.hpp"
#include "oracles.hpp"

using namespace ltstor;

TEST_CASE("degenerate table: k = 1 forces degree 1") {
    for (double c : {0.1, 0.5, 1.0}) {
        for (double delta : {0.05, 0.5, 0.9}) {
            DegreeDistribution dist(1, c, delta);
            CHECK(dist.omega(1) == doctest::Approx(1.0).epsilon(1e-15));
            Rng rng(1);
            for (int i = 0; i < 50; ++i) CHECK(dist.sample(rng) == 1);
        }
    }
}

TEST_CASE("k=4, c=0.5, delta=0.5 full table") {
    // Frozen from a by-hand evaluation of the three displayed expressions
    // with the round-and-clamp spike rule: R = 2*0.5*ln(8), spike at
    // round(4/R) = 2.
    DegreeDistribution dist(4, 0.5, 0.5);
    CHECK(dist.r() == doctest::Approx(2.0794415416798357).epsilon(1e-15));
    CHECK(dist.spike() == 2);
    CHECK(dist.beta() == doctest::Approx(2.2607896055177377).epsilon(1e-15));
    CHECK(dist.omega(1) == doctest::Approx(0.34052721382875217).epsilon(1e-14));
    CHECK(dist.omega(2) == doctest::Approx(0.54889195220516629).epsilon(1e-14));
    CHECK(dist.omega(3) == doctest::Approx(0.073720555977387706).epsilon(1e-14));
    CHECK(dist.omega(4) == doctest::Approx(0.036860277988693853).epsilon(1e-14));
}

TEST_CASE("normalization and support over the parameter grid") {
    for (std::size_t k : {1u, 4u, 10u, 20u, 50u, 100u, 500u}) {
        for (double c : {0.1, 0.5, 1.0}) {
            for (double delta : {0.05, 0.1, 0.5}) {
                CAPTURE(k);
                CAPTURE(c);
                CAPTURE(delta);
                DegreeDistribution dist(k, c, delta);
                double sum = 0.0;
                for (std::size_t d = 1; d <= k; ++d) {
                    CHECK(dist.omega(d) >= 0.0);
                    sum += dist.omega(d);
                }
                CHECK(std::abs(sum - 1.0) < 1e-12);
                CHECK(dist.cdf(k) == 1.0);
                for (std::size_t d = 2; d <= k; ++d) {
                    CHECK(dist.cdf(d) >= dist.cdf(d - 1));
                }
            }
        }
    }
}

TEST_CASE("tables agree with the reference recomputation") {
    for (std::size_t k : {4u, 20u, 100u}) {
        for (double c : {0.1, 1.0}) {
            DegreeDistribution dist(k, c, 0.1);
            auto ref = oracle::rsd_reference(k, c, 0.1);
            CHECK(dist.spike() == ref.spike);
            CHECK(dist.beta() == doctest::Approx(ref.beta).epsilon(1e-13));
            for (std::size_t d = 1; d <= k; ++d) {
                CHECK(dist.omega(d) ==
                      doctest::Approx(ref.omega[d - 1]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("spike mass: tau's spike term included exactly once") {
    for (std::size_t k : {4u, 10u, 20u, 50u, 100u, 500u}) {
        for (double c : {0.1, 0.5, 1.0}) {
            for (double delta : {0.05, 0.1, 0.5}) {
                DegreeDistribution dist(k, c, delta);
                const std::size_t s = dist.spike();
                const double rho_s =
                    s == 1 ? 1.0 / double(k) : 1.0 / (double(s) * double(s - 1));
                const double spike_term =
                    (dist.r() / double(k)) * std::log(dist.r() / delta);
                const double mass_s = dist.omega(s) * dist.beta();
                CHECK(mass_s ==
                      doctest::Approx(rho_s + spike_term).epsilon(1e-12));
                // Local concentration when the spike lands inside the table
                // with positive extra mass.
                if (s >= 2 && s < k && spike_term > 0.1) {
                    CHECK(dist.omega(s) > dist.omega(s - 1));
                    CHECK(dist.omega(s) > dist.omega(s + 1));
                }
            }
        }
    }
}

TEST_CASE("degenerate sampling: a distribution with a forced degree") {
    // k = 2 with the spike clamped onto d = 2 still mixes degrees; instead
    // pin the degenerate case via k = 1 (always 1) plus a cdf sanity check
    // that sampling never leaves [1, k].
    DegreeDistribution dist(20, 0.1, 0.1);
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        auto d = dist.sample(rng);
        CHECK(d >= 1);
        CHECK(d <= 20);
    }
}

TEST_CASE("sampled frequencies converge to omega (binomial bound)") {
    DegreeDistribution dist(20, 0.1, 0.1);
    Rng rng(12345);
    const std::size_t n = 1000000;
    std::vector<std::size_t> counts(21, 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[dist.sample(rng)];
    for (std::size_t d = 1; d <= 20; ++d) {
        const double p = dist.omega(d);
        const double freq = double(counts[d]) / double(n);
        const double bound = 4.0 * std::sqrt(p * (1.0 - p) / double(n));
        CAPTURE(d);
        CHECK(std::abs(freq - p) <= bound);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DegreeDistribution(0, 0.1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution(10, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution(10, -1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution(10, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(DegreeDistribution(10, 0.1, 1.0), std::invalid_argument);
}
