#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ltstor/cost_model.hpp"
#include "ltstor/lt.hpp"

using namespace ltstor;

TEST_CASE("make_droplet pins the Fig-3 style layout") {
    Rng rng(1);
    Epoch epoch = Epoch::random(6, 16, rng);
    const std::size_t idx[] = {0, 2};  // blocks 1 and 3
    Droplet d = make_droplet(epoch, idx);
    CHECK(d.coeffs.to_string() == "101000");
    CHECK(d.degree == 2);
    for (std::size_t j = 0; j < 16; ++j) {
        CHECK(d.payload[j] == (epoch.blocks[0][j] ^ epoch.blocks[2][j]));
    }
}

TEST_CASE("degree-k droplet XORs every block; degree-1 copies one") {
    Rng rng(2);
    Epoch epoch = Epoch::random(5, 8, rng);
    Droplet full = encode_droplet(epoch, 5, rng);
    CHECK(full.coeffs.popcount() == 5);
    std::vector<std::uint8_t> expect(8, 0);
    for (const auto& b : epoch.blocks) {
        for (std::size_t j = 0; j < 8; ++j) expect[j] ^= b[j];
    }
    CHECK(full.payload == expect);

    Droplet single = encode_droplet(epoch, 1, rng);
    const std::size_t m = single.coeffs.first_set();
    CHECK(single.payload == epoch.blocks[m]);
}

TEST_CASE("payload equals XOR of selected blocks on random draws") {
    Rng rng(3);
    for (int it = 0; it < 200; ++it) {
        const std::size_t k = 2 + rng.below(12);
        Epoch epoch = Epoch::random(k, 4, rng);
        Droplet d = encode_droplet(epoch, 1 + rng.below(k), rng);
        CHECK(d.degree == d.coeffs.popcount());
        std::vector<std::uint8_t> expect(4, 0);
        for (std::size_t m = 0; m < k; ++m) {
            if (!d.coeffs.test(m)) continue;
            for (std::size_t j = 0; j < 4; ++j) expect[j] ^= epoch.blocks[m][j];
        }
        CHECK(d.payload == expect);
    }
}

TEST_CASE("encode_droplet validates the degree") {
    Rng rng(4);
    Epoch epoch = Epoch::random(4, 4, rng);
    CHECK_THROWS_AS(encode_droplet(epoch, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(encode_droplet(epoch, 5, rng), std::invalid_argument);
    CHECK_THROWS_AS(encode_droplet(std::size_t{4}, std::size_t{9}, rng),
                    std::invalid_argument);
}

TEST_CASE("generate_full_node shape and validation") {
    DegreeDistribution dist(20, 0.1, 0.1);
    Rng rng(5);
    FullNode node = generate_full_node(std::size_t{20}, 60, dist, rng);
    CHECK(node.S == 60);
    CHECK(node.k == 20);
    CHECK(node.epochs == 1);
    CHECK(node.droplet_nodes.size() == 60);
    for (const auto& d : node.droplet_nodes) {
        CHECK(d.degree >= 1);
        CHECK(d.degree <= 20);
        CHECK(d.degree == d.coeffs.popcount());
    }
    CHECK_THROWS_AS(generate_full_node(std::size_t{20}, 20, dist, rng),
                    std::invalid_argument);

    DegreeDistribution one(1, 0.5, 0.5);
    Epoch epoch = Epoch::random(1, 4, rng);
    FullNode tiny = generate_full_node(epoch, 2, one, rng);
    CHECK(tiny.droplet_nodes[0].payload == epoch.blocks[0]);
    CHECK(tiny.droplet_nodes[1].payload == epoch.blocks[0]);
}

TEST_CASE("empirical mean degree approaches the analytic average") {
    DegreeDistribution dist(20, 0.1, 0.1);
    Rng rng(6);
    const std::size_t n = 100000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += double(encode_droplet(std::size_t{20}, dist.sample(rng), rng).degree);
    }
    const double empirical = sum / double(n);
    const double exact = dist.exact_mean_degree();
    CHECK(std::abs(empirical - exact) / exact < 0.02);
    // the closed-form approximation sits within 10% of the exact mean
    CHECK(std::abs(avg_degree(dist) - exact) / exact < 0.10);
}
