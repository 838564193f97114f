#include "ltstor/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ltstor {

void AttackModel::validate() const {
    if (!(sigma > 0.0 && sigma <= sigma0 && sigma0 <= 1.0)) {
        throw std::invalid_argument("attack model requires 0 < sigma <= sigma0 <= 1");
    }
    if (!(zeta >= 1.0)) throw std::invalid_argument("zeta must be >= 1");
}

std::size_t round_count(double fraction, std::size_t S) {
    return static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(S)));
}

ReadSet sample_read_set(const FullNode& node, double sigma0, Rng& rng) {
    if (!(sigma0 > 0.0 && sigma0 <= 1.0)) {
        throw std::invalid_argument("sigma0 must lie in (0, 1]");
    }
    const std::size_t count = round_count(sigma0, node.S);
    if (count == 0) throw std::invalid_argument("read set would be empty");
    ReadSet read;
    read.indices = rng.sample_distinct(node.S, count);
    std::sort(read.indices.begin(), read.indices.end());
    read.rows.reserve(count);
    read.degrees.reserve(count);
    for (std::size_t i : read.indices) {
        read.rows.push_back(node.droplet_nodes[i].coeffs);
        read.degrees.push_back(node.droplet_nodes[i].degree);
    }
    return read;
}

namespace {

AttackPlan plan_from_read_positions(AttackStrategy strategy, const ReadSet& read,
                                    const std::vector<std::size_t>& positions) {
    AttackPlan plan;
    plan.strategy = strategy;
    plan.erased.reserve(positions.size());
    for (std::size_t p : positions) plan.erased.push_back(read.indices[p]);
    std::sort(plan.erased.begin(), plan.erased.end());
    return plan;
}

}  // namespace

AttackPlan attack_blind(std::size_t S, double sigma, Rng& rng) {
    if (!(sigma > 0.0 && sigma <= 1.0)) {
        throw std::invalid_argument("sigma must lie in (0, 1]");
    }
    const std::size_t count = round_count(sigma, S);
    if (count == 0) throw std::invalid_argument("erased set would be empty");
    AttackPlan plan;
    plan.strategy = AttackStrategy::Blind;
    plan.erased = rng.sample_distinct(S, count);
    std::sort(plan.erased.begin(), plan.erased.end());
    return plan;
}

AttackPlan attack_degree(const ReadSet& read, std::size_t erase_count) {
    if (erase_count > read.size()) {
        throw std::invalid_argument("cannot erase more nodes than were read");
    }
    std::vector<std::size_t> order(read.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (read.degrees[a] != read.degrees[b]) {
            return read.degrees[a] < read.degrees[b];
        }
        return read.indices[a] < read.indices[b];
    });
    order.resize(erase_count);
    return plan_from_read_positions(AttackStrategy::Degree, read, order);
}

std::vector<double> compute_scores(const ReadSet& read) {
    if (read.size() == 0) throw std::invalid_argument("read set is empty");
    const std::size_t n = read.size();
    std::vector<double> score(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = std::ldexp(1.0, -(read.degrees[i] - 1));
        for (std::size_t j = 0; j < n; ++j) {
            if (read.degrees[j] > read.degrees[i] &&
                read.rows[i].subset_of(read.rows[j])) {
                s += std::ldexp(1.0, -(read.degrees[j] - 1));
            }
        }
        score[i] = s;
    }
    return score;
}

AttackPlan attack_score(const ReadSet& read, std::size_t erase_count) {
    if (erase_count > read.size()) {
        throw std::invalid_argument("cannot erase more nodes than were read");
    }
    const std::vector<double> score = compute_scores(read);
    std::vector<std::size_t> order(read.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return read.indices[a] < read.indices[b];
    });
    order.resize(erase_count);
    return plan_from_read_positions(AttackStrategy::Score, read, order);
}

AttackPlan attack_min_rank(const ReadSet& read, std::size_t erase_count) {
    if (erase_count > read.size()) {
        throw std::invalid_argument("cannot erase more nodes than were read");
    }
    const std::size_t n = read.size();
    const std::size_t keep = n - erase_count;
    if (keep == 0) {
        // Degenerate sigma == sigma0 case: the whole read set goes.
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        return plan_from_read_positions(AttackStrategy::MinRank, read, all);
    }
    const std::size_t k = read.rows[0].size();

    PivotBasis basis(k);
    std::vector<bool> used(n, false);
    std::vector<std::size_t> survivors;
    survivors.reserve(keep);

    auto take = [&](std::size_t j) {
        used[j] = true;
        survivors.push_back(j);
        basis.insert(read.rows[j]);
    };

    take(0);  // seeded with the first read row
    while (survivors.size() < keep) {
        // Any unused row already in the span keeps the rank flat.
        std::size_t pick = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!used[j] && !basis.would_increase(read.rows[j])) {
                pick = j;
                break;
            }
        }
        if (pick == n) {
            // Forced to grow the rank. Every candidate adds exactly one
            // dimension now; prefer the row whose span absorbs the most
            // remaining rows, so later slots stay rank-flat.
            std::size_t best_dep = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                PivotBasis trial = basis;
                trial.insert(read.rows[j]);
                std::size_t dep = 0;
                for (std::size_t t = 0; t < n; ++t) {
                    if (t == j || used[t]) continue;
                    if (!trial.would_increase(read.rows[t])) ++dep;
                }
                const bool better =
                    pick == n || dep > best_dep ||
                    (dep == best_dep && read.degrees[j] < read.degrees[pick]);
                if (better) {
                    pick = j;
                    best_dep = dep;
                }
            }
        }
        take(pick);
    }

    std::vector<std::size_t> erase_positions;
    erase_positions.reserve(erase_count);
    for (std::size_t j = 0; j < n; ++j) {
        if (!used[j]) erase_positions.push_back(j);
    }
    return plan_from_read_positions(AttackStrategy::MinRank, read, erase_positions);
}

AttackPlan attack_for_decoder(DecoderKind kind, std::size_t eta_c,
                              const ReadSet& read, std::size_t erase_count) {
    switch (kind) {
        case DecoderKind::Bp:
            return attack_score(read, erase_count);
        case DecoderKind::Ofg:
        case DecoderKind::Brh:
            return attack_min_rank(read, erase_count);
        case DecoderKind::Crh:
            return eta_c > 0 ? attack_score(read, erase_count)
                             : attack_min_rank(read, erase_count);
    }
    throw std::invalid_argument("unknown decoder kind");
}

AttackPlan attack_with_strategy(AttackStrategy strategy, DecoderKind kind,
                                std::size_t eta_c, const FullNode& node,
                                double sigma, double sigma0, Rng& rng) {
    if (strategy == AttackStrategy::Blind) {
        return attack_blind(node.S, sigma, rng);
    }
    ReadSet read = sample_read_set(node, sigma0, rng);
    const std::size_t erase_count = round_count(sigma, node.S);
    if (erase_count > read.size()) {
        throw std::invalid_argument("non-oblivious attack requires sigma <= sigma0");
    }
    switch (strategy) {
        case AttackStrategy::Degree:
            return attack_degree(read, erase_count);
        case AttackStrategy::Score:
            return attack_score(read, erase_count);
        case AttackStrategy::MinRank:
            return attack_min_rank(read, erase_count);
        case AttackStrategy::Auto:
            return attack_for_decoder(kind, eta_c, read, erase_count);
        case AttackStrategy::Blind:
            break;
    }
    throw std::invalid_argument("unknown attack strategy");
}

double attack_cost(double sigma0, double sigma, std::size_t S, double c_r,
                   double c_e) {
    if (!(sigma > 0.0 && sigma <= sigma0 && sigma0 <= 1.0)) {
        throw std::invalid_argument("attack cost requires 0 < sigma <= sigma0 <= 1");
    }
    return c_r * static_cast<double>(round_count(sigma0, S)) +
           c_e * static_cast<double>(round_count(sigma, S));
}

}  // namespace ltstor
