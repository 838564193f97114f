#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ltstor/cost_model.hpp"
#include "ltstor/io.hpp"
#include "ltstor/sim.hpp"

using namespace ltstor;

TEST_CASE("trivial experiments") {
    ExperimentConfig cfg;
    cfg.k = 1;
    cfg.S = 4;
    cfg.c = 0.5;
    cfg.delta = 0.5;
    cfg.decoder = DecoderKind::Ofg;
    cfg.K = 4;
    cfg.trials = 200;
    auto r = run_experiment(cfg);
    CHECK(r.failure_rate == 0.0);

    cfg.k = 5;
    cfg.S = 20;
    cfg.K = 20;
    cfg.attack = AttackSpec{AttackStrategy::Blind, 1.0, 1.0};
    auto dead = run_experiment(cfg);
    CHECK(dead.failure_rate == 1.0);
}

TEST_CASE("trials are pure functions of (seed, index)") {
    ExperimentConfig cfg;
    cfg.k = 10;
    cfg.S = 30;
    cfg.decoder = DecoderKind::Brh;
    cfg.K = 15;
    cfg.attack = AttackSpec{AttackStrategy::Auto, 0.2, 0.5};
    cfg.master_seed = 99;
    for (std::size_t t = 0; t < 50; ++t) {
        auto a = run_trial(cfg, t);
        auto b = run_trial(cfg, t);
        CHECK(a.success == b.success);
        CHECK(a.droplets_used == b.droplets_used);
        CHECK(a.xor_count == b.xor_count);
        CHECK(a.eta_b == b.eta_b);
    }
}

TEST_CASE("experiment results independent of worker count") {
    ExperimentConfig cfg;
    cfg.k = 10;
    cfg.S = 30;
    cfg.decoder = DecoderKind::Crh;
    cfg.eta_c = 4;
    cfg.attack = AttackSpec{AttackStrategy::Auto, 0.2, 0.6};
    cfg.trials = 600;
    cfg.master_seed = 31337;
    FailureRateResult results[3];
    unsigned workers[3] = {1, 2, 5};
    for (int i = 0; i < 3; ++i) {
        ExperimentConfig c2 = cfg;
        c2.threads = workers[i];
        results[i] = run_experiment(c2);
    }
    for (int i = 1; i < 3; ++i) {
        CHECK(results[i].failures == results[0].failures);
        CHECK(results[i].mean_droplets_used == results[0].mean_droplets_used);
        CHECK(results[i].mean_xor == results[0].mean_xor);
        CHECK(results[i].mean_eta_b == results[0].mean_eta_b);
        CHECK(experiment_csv_row(cfg, results[i]) ==
              experiment_csv_row(cfg, results[0]));
    }
}

TEST_CASE("bucket sampling never touches erased nodes") {
    // sigma = 0.5 with blind attack on half the nodes: decoding from the
    // survivor half must behave exactly as if only those nodes existed,
    // which run_trial realizes by construction. Spot-check via the
    // infeasible case: K greater than survivors always fails.
    ExperimentConfig cfg;
    cfg.k = 5;
    cfg.S = 12;
    cfg.decoder = DecoderKind::Bp;
    cfg.K = 8;
    cfg.attack = AttackSpec{AttackStrategy::Blind, 0.5, 0.5};
    cfg.trials = 100;
    auto r = run_experiment(cfg);
    CHECK(r.failure_rate == 1.0);  // 6 survivors < K = 8 every time
    CHECK(r.mean_droplets_used == doctest::Approx(6.0));
}

TEST_CASE("stderr formula") {
    ExperimentConfig cfg;
    cfg.k = 10;
    cfg.S = 25;
    cfg.decoder = DecoderKind::Bp;
    cfg.K = 14;
    cfg.trials = 500;
    auto r = run_experiment(cfg);
    CHECK(r.failure_rate == double(r.failures) / 500.0);
    CHECK(r.stderr_value ==
          doctest::Approx(std::sqrt(r.failure_rate * (1 - r.failure_rate) / 500.0)));
}

TEST_CASE("optimize_attack: constraint algebra and internal argmax") {
    ExperimentConfig cfg;
    cfg.k = 10;
    cfg.S = 30;
    cfg.decoder = DecoderKind::Bp;
    cfg.K = 17;
    cfg.trials = 400;
    cfg.master_seed = 5;
    cfg.attack = AttackSpec{AttackStrategy::Auto, 0, 0};
    const double nu = 30.0, zeta = 1.5;
    auto opt = optimize_attack(cfg, nu, zeta);
    CHECK(!opt.sweep.empty());
    double best_seen = -1.0;
    for (const auto& p : opt.sweep) {
        const double xi = p.sigma0 / p.sigma;
        CHECK(p.sigma * 30.0 * (xi + zeta) <= nu + 1e-9);
        CHECK(p.sigma <= p.sigma0 + 1e-12);
        CHECK(p.sigma0 <= 1.0);
        best_seen = std::max(best_seen, p.failure_rate);
    }
    CHECK(opt.failure_rate == best_seen);
    // sweep endpoint: sigma_max = nu / (S(1+zeta)) = 0.4
    CHECK(opt.sweep.back().sigma == doctest::Approx(0.4));
    CHECK(opt.sweep.size() == 40);

    CHECK_THROWS_AS(optimize_attack(cfg, 0.2, 1.0), std::invalid_argument);
}

TEST_CASE("full-node file round-trip") {
    DegreeDistribution dist(6, 0.5, 0.5);
    Rng rng(8);
    Epoch epoch = Epoch::random(6, 16, rng);
    FullNode node = generate_full_node(epoch, 20, dist, rng);

    std::stringstream ss;
    write_full_node(ss, node, true);
    FullNode back = read_full_node(ss);
    CHECK(back.k == 6);
    CHECK(back.S == 20);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(back.droplet_nodes[i].coeffs == node.droplet_nodes[i].coeffs);
        CHECK(back.droplet_nodes[i].payload == node.droplet_nodes[i].payload);
        CHECK(back.droplet_nodes[i].degree == node.droplet_nodes[i].degree);
    }

    std::stringstream sym;
    write_full_node(sym, node, false);
    FullNode stripped = read_full_node(sym);
    CHECK(stripped.droplet_nodes[0].payload.empty());

    std::stringstream bad("3 2\n111\n101\n");
    CHECK_THROWS(read_full_node(bad));
    std::stringstream zero("2 3\n00\n10\n01\n");
    CHECK_THROWS(read_full_node(zero));
}

TEST_CASE("config file parsing") {
    const char* path = "test_config_tmp.cfg";
    {
        std::ofstream os(path);
        os << "# experiment\nk = 10\nS = 30\ndecoder = brh\nK = 15\n"
              "trials = 123\nseed = 42\nstrategy = minrank\nsigma = 0.2\n"
              "sigma0 = 0.5\n";
    }
    ExperimentConfig cfg;
    apply_config(cfg, parse_config_file(path));
    CHECK(cfg.k == 10);
    CHECK(cfg.S == 30);
    CHECK(cfg.decoder == DecoderKind::Brh);
    CHECK(cfg.K == 15);
    CHECK(cfg.trials == 123);
    CHECK(cfg.master_seed == 42);
    REQUIRE(cfg.attack.has_value());
    CHECK(cfg.attack->strategy == AttackStrategy::MinRank);
    CHECK(cfg.attack->sigma == doctest::Approx(0.2));
    std::remove(path);

    std::map<std::string, std::string> bad{{"bogus", "1"}};
    CHECK_THROWS(apply_config(cfg, bad));
}

TEST_CASE("csv and json rows are well-formed") {
    ExperimentConfig cfg;
    cfg.k = 10;
    cfg.S = 25;
    cfg.decoder = DecoderKind::Ofg;
    cfg.K = 13;
    cfg.trials = 300;
    auto r = run_experiment(cfg);
    auto row = experiment_csv_row(cfg, r);
    CHECK(row.find("10,25,ofg,13,0,none") == 0);
    auto j = experiment_json(cfg, r);
    CHECK(j.find("\"failure_rate\"") != std::string::npos);
    CHECK(j.find("\"decoder\": \"ofg\"") != std::string::npos);
}
