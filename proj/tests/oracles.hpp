// Test-only reference implementations, deliberately independent of the
// library's code paths: a from-scratch dense elimination for rank, an
// exhaustive peeling search over all singleton orders, and a direct
// re-evaluation of the degree-distribution tables.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ltstor/gf2.hpp"
#include "ltstor/lt.hpp"

namespace oracle {

// Rank via textbook forward elimination on a dense 0/1 array.
inline std::size_t dense_rank(std::vector<std::vector<int>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (m[i][c]) {
                piv = i;
                break;
            }
        }
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i != r && m[i][c]) {
                for (std::size_t j = 0; j < cols; ++j) m[i][j] ^= m[r][j];
            }
        }
        ++r;
    }
    return r;
}

inline std::vector<std::vector<int>> to_dense(const ltstor::BitMatrix& m) {
    std::vector<std::vector<int>> d(m.row_count(),
                                    std::vector<int>(m.col_count(), 0));
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        for (std::size_t j = 0; j < m.col_count(); ++j) {
            d[i][j] = m.row(i).test(j) ? 1 : 0;
        }
    }
    return d;
}

// Best (max blocks resolved) and worst outcome of peeling over every
// possible singleton-selection order. Exponential; keep instances tiny.
inline void peel_all_orders(std::vector<std::uint32_t> rows, std::size_t k,
                            std::size_t resolved, std::size_t& best,
                            std::size_t& worst) {
    bool any = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::uint32_t r = rows[i];
        if (r != 0 && (r & (r - 1)) == 0) {
            any = true;
            auto next = rows;
            for (auto& x : next) {
                if (x & r) x ^= r;
            }
            peel_all_orders(std::move(next), k, resolved + 1, best, worst);
        }
    }
    if (!any) {
        best = std::max(best, resolved);
        worst = std::min(worst, resolved);
    }
}

struct PeelRange {
    std::size_t best;
    std::size_t worst;
};

inline PeelRange exhaustive_peel(const std::vector<std::uint32_t>& rows,
                                 std::size_t k) {
    std::size_t best = 0, worst = k + 1;
    peel_all_orders(rows, k, 0, best, worst);
    if (worst > k) worst = best;
    return {best, worst};
}

// Degree-distribution tables recomputed directly from the three displayed
// expressions (ideal part, tail, spike) with the round-and-clamp rule.
struct RsdTables {
    double R;
    std::size_t spike;
    double beta;
    std::vector<double> omega;  // omega[d-1]
};

inline RsdTables rsd_reference(std::size_t k, double c, double delta) {
    RsdTables t;
    const double kd = static_cast<double>(k);
    t.R = c * std::sqrt(kd) * std::log(kd / delta);
    long long s = std::llround(kd / t.R);
    if (s < 1) s = 1;
    if (s > static_cast<long long>(k)) s = static_cast<long long>(k);
    t.spike = static_cast<std::size_t>(s);
    std::vector<double> mass(k, 0.0);
    for (std::size_t d = 1; d <= k; ++d) {
        mass[d - 1] = d == 1 ? 1.0 / kd : 1.0 / (double(d) * double(d - 1));
        if (d < t.spike) mass[d - 1] += t.R / (double(d) * kd);
        if (d == t.spike) mass[d - 1] += (t.R / kd) * std::log(t.R / delta);
    }
    t.beta = 0.0;
    for (double m : mass) t.beta += m;
    t.omega.resize(k);
    for (std::size_t d = 1; d <= k; ++d) t.omega[d - 1] = mass[d - 1] / t.beta;
    return t;
}

inline std::vector<std::uint32_t> rows_as_bits(const std::vector<ltstor::Droplet>& ds) {
    std::vector<std::uint32_t> out;
    out.reserve(ds.size());
    for (const auto& d : ds) {
        std::uint32_t r = 0;
        for (std::size_t j = 0; j < d.coeffs.size(); ++j) {
            if (d.coeffs.test(j)) r |= (1u << j);
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace oracle
