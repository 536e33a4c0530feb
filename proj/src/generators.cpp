#include "fairdiv/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace fairdiv {

namespace {

// mt19937_64 output is pinned by the standard, so engine() % k keeps the
// streams platform-independent (std::uniform_int_distribution is not).
std::uint64_t next_in(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng() % (hi - lo + 1);
}

std::vector<Rational> random_positive_values(std::mt19937_64& rng, int m, long long max_value) {
    std::vector<Rational> vals;
    vals.reserve(static_cast<std::size_t>(m));
    for (int g = 0; g < m; ++g) {
        vals.emplace_back(static_cast<long long>(next_in(rng, 1, static_cast<std::uint64_t>(max_value))));
    }
    return vals;
}

// One monotone normalized table: walk the subset lattice along a linear
// extension (by popcount level, shuffled within each level) and set
// v(S) = max over g in S of v(S \ g), plus a random increment.
Valuation random_monotone_table(std::mt19937_64& rng, int m, bool strictly_positive_increments) {
    const std::uint64_t states = 1ULL << m;
    std::vector<std::vector<std::uint64_t>> levels(static_cast<std::size_t>(m) + 1);
    for (std::uint64_t mask = 0; mask < states; ++mask) {
        levels[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    }
    std::vector<Rational> table(states);
    for (auto& level : levels) {
        std::shuffle(level.begin(), level.end(), rng);
        for (std::uint64_t mask : level) {
            if (mask == 0) continue;
            Rational floor_value;
            for (int g = 0; g < m; ++g) {
                if (!(mask & (1ULL << g))) continue;
                floor_value = std::max(floor_value, table[mask & ~(1ULL << g)]);
            }
            const std::uint64_t lo = strictly_positive_increments ? 1 : 0;
            table[mask] = floor_value + Rational(static_cast<long long>(next_in(rng, lo, 8)));
        }
    }
    return Valuation::table(m, std::move(table));
}

}  // namespace

std::vector<Valuation> generate_random(GeneratedKind kind, int m, int n, std::uint64_t seed) {
    if (m < 0 || n < 1) throw usage_error("generate_random: need m >= 0 and n >= 1");
    std::mt19937_64 rng(seed ^ 0x5eedf00d5eedf00dULL);
    std::vector<Valuation> out;
    out.reserve(static_cast<std::size_t>(n));

    switch (kind) {
        case GeneratedKind::additive: {
            for (int i = 0; i < n; ++i) out.push_back(Valuation::additive(random_positive_values(rng, m, 100)));
            return out;
        }
        case GeneratedKind::identical_table_monotone: {
            const Valuation shared = random_monotone_table(rng, m, /*strictly_positive_increments=*/false);
            for (int i = 0; i < n; ++i) out.push_back(shared);
            return out;
        }
        case GeneratedKind::identical_ranking_additive: {
            // One global ordering of the goods; every player draws distinct
            // positive values and assigns them along that ordering, so all
            // players rank the goods identically (with no ties).
            std::vector<int> order(static_cast<std::size_t>(m));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            for (int i = 0; i < n; ++i) {
                std::vector<long long> draws;
                draws.reserve(static_cast<std::size_t>(m));
                long long prev = 0;
                for (int g = 0; g < m; ++g) {
                    prev += static_cast<long long>(next_in(rng, 1, 20));
                    draws.push_back(prev);
                }
                // draws is strictly increasing; hand the largest to the good
                // ranked first.
                std::vector<Rational> vals(static_cast<std::size_t>(m));
                for (int pos = 0; pos < m; ++pos) {
                    vals[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
                        Rational(draws[static_cast<std::size_t>(m - 1 - pos)]);
                }
                out.push_back(Valuation::additive(std::move(vals)));
            }
            return out;
        }
        case GeneratedKind::budget_additive_subadditive: {
            if (m > Valuation::kMaxTableGoods) {
                throw capacity_error("generate_random: budget-additive valuations materialize a table; m too large");
            }
            for (int i = 0; i < n; ++i) {
                std::vector<long long> weights;
                long long sum = 0, maxw = 0;
                for (int g = 0; g < m; ++g) {
                    const long long w = static_cast<long long>(next_in(rng, 1, 30));
                    weights.push_back(w);
                    sum += w;
                    maxw = std::max(maxw, w);
                }
                const long long budget =
                    m == 0 ? 1 : static_cast<long long>(next_in(rng, static_cast<std::uint64_t>(maxw),
                                                                static_cast<std::uint64_t>(std::max(maxw, sum))));
                const std::uint64_t states = 1ULL << m;
                std::vector<Rational> table(states);
                for (std::uint64_t mask = 1; mask < states; ++mask) {
                    long long s = 0;
                    for (int g = 0; g < m; ++g) {
                        if (mask & (1ULL << g)) s += weights[static_cast<std::size_t>(g)];
                    }
                    table[mask] = Rational(std::min(budget, s));
                }
                out.push_back(Valuation::table(m, std::move(table)));
            }
            return out;
        }
    }
    throw usage_error("generate_random: unknown kind");
}

std::vector<Valuation> generate_random_identical_table_nmu(int m, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5eedf00d5eedf00dULL);
    const Valuation shared = random_monotone_table(rng, m, /*strictly_positive_increments=*/true);
    return std::vector<Valuation>(static_cast<std::size_t>(n), shared);
}

}  // namespace fairdiv
