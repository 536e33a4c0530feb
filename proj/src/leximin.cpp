#include "fairdiv/leximin.hpp"

#include <algorithm>
#include <thread>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

void check_instance(const std::vector<Valuation>& valuations, int m) {
    if (valuations.empty()) throw usage_error("leximin: no valuations");
    for (const Valuation& v : valuations) {
        if (v.goods_count() != m) throw usage_error("leximin: mixed valuation universes");
    }
}

// The comparison key of an allocation: (utility, bundle size) per player,
// sorted by (utility, player index). Plain leximin ignores the sizes.
struct LeximinKey {
    std::vector<Rational> utils;
    std::vector<int> sizes;
};

LeximinKey build_key(const Allocation& a, const std::vector<Valuation>& valuations,
                     const std::vector<Rational>* scale) {
    const int n = a.players();
    std::vector<Rational> u(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        u[static_cast<std::size_t>(i)] = valuations[static_cast<std::size_t>(i)].value(a.bundle(i));
        if (scale) u[static_cast<std::size_t>(i)] /= (*scale)[static_cast<std::size_t>(i)];
        order[static_cast<std::size_t>(i)] = i;
    }
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (u[static_cast<std::size_t>(x)] != u[static_cast<std::size_t>(y)]) {
            return u[static_cast<std::size_t>(x)] < u[static_cast<std::size_t>(y)];
        }
        return x < y;
    });
    LeximinKey key;
    key.utils.reserve(static_cast<std::size_t>(n));
    key.sizes.reserve(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) {
        const int player = order[static_cast<std::size_t>(pos)];
        key.utils.push_back(std::move(u[static_cast<std::size_t>(player)]));
        key.sizes.push_back(a.bundle(player).size());
    }
    return key;
}

// -1 when a < b, 0 when equal signatures, +1 when a > b.
int compare_keys(const LeximinKey& a, const LeximinKey& b, ComparatorKind kind) {
    for (std::size_t pos = 0; pos < a.utils.size(); ++pos) {
        if (a.utils[pos] != b.utils[pos]) return a.utils[pos] < b.utils[pos] ? -1 : 1;
        if (kind == ComparatorKind::leximin_plus_plus && a.sizes[pos] != b.sizes[pos]) {
            return a.sizes[pos] < b.sizes[pos] ? -1 : 1;
        }
    }
    return 0;
}

std::vector<Rational> normalization_totals(const std::vector<Valuation>& valuations) {
    std::vector<Rational> totals;
    totals.reserve(valuations.size());
    for (std::size_t i = 0; i < valuations.size(); ++i) {
        Rational t = valuations[i].total();
        if (t.is_zero()) {
            throw usage_error("leximin: cannot normalize, player " + std::to_string(i) +
                              " values the full bundle at 0");
        }
        totals.push_back(std::move(t));
    }
    return totals;
}

}  // namespace

std::vector<int> player_ordering(const Allocation& a, const std::vector<Valuation>& valuations) {
    check_instance(valuations, a.goods_count());
    if (static_cast<int>(valuations.size()) != a.players()) {
        throw usage_error("leximin: valuations/players mismatch");
    }
    const int n = a.players();
    std::vector<Rational> u(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        u[static_cast<std::size_t>(i)] = valuations[static_cast<std::size_t>(i)].value(a.bundle(i));
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (u[static_cast<std::size_t>(x)] != u[static_cast<std::size_t>(y)]) {
            return u[static_cast<std::size_t>(x)] < u[static_cast<std::size_t>(y)];
        }
        return x < y;
    });
    return order;
}

bool leximin_cmp(const Allocation& a, const Allocation& b, const std::vector<Valuation>& valuations,
                 ComparatorKind kind) {
    if (a.players() != b.players() || a.goods_count() != b.goods_count()) {
        throw usage_error("leximin_cmp: allocations over different instances");
    }
    check_instance(valuations, a.goods_count());
    if (static_cast<int>(valuations.size()) != a.players()) {
        throw usage_error("leximin_cmp: valuations/players mismatch");
    }
    return compare_keys(build_key(a, valuations, nullptr), build_key(b, valuations, nullptr), kind) < 0;
}

Allocation leximin_solve(const std::vector<Valuation>& valuations, ComparatorKind kind,
                         const SolveOptions& options) {
    if (valuations.empty()) throw usage_error("leximin_solve: no valuations");
    const int n = static_cast<int>(valuations.size());
    const int m = valuations[0].goods_count();
    check_instance(valuations, m);

    std::vector<Rational> totals;
    const std::vector<Rational>* scale = nullptr;
    if (options.normalize) {
        totals = normalization_totals(valuations);
        scale = &totals;
    }

    const std::uint64_t total = allocation_count(n, m, options.max_states);

    struct Best {
        std::uint64_t index = 0;
        Allocation alloc;
        LeximinKey key;
        bool set = false;
        Best() : alloc(1, 0) {}
    };

    auto scan_range = [&](std::uint64_t lo, std::uint64_t hi, Best& best) {
        if (lo >= hi) return;
        Allocation cursor = Allocation::from_canonical_index(n, m, lo);
        std::uint64_t idx = lo;
        while (true) {
            LeximinKey key = build_key(cursor, valuations, scale);
            if (!best.set || compare_keys(best.key, key, kind) < 0) {
                best.set = true;
                best.index = idx;
                best.alloc = cursor;
                best.key = std::move(key);
            }
            if (++idx >= hi) break;
            cursor = Allocation::from_canonical_index(n, m, idx);
        }
    };

    const int jobs = std::max(1, std::min(options.jobs, 16));
    if (jobs == 1 || total < 1024) {
        Best best;
        for_each_allocation(
            n, m,
            [&](const Allocation& a, std::uint64_t idx) {
                LeximinKey key = build_key(a, valuations, scale);
                if (!best.set || compare_keys(best.key, key, kind) < 0) {
                    best.set = true;
                    best.index = idx;
                    best.alloc = a;
                    best.key = std::move(key);
                }
            },
            options.max_states);
        return best.alloc;
    }

    std::vector<Best> bests(static_cast<std::size_t>(jobs));
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + static_cast<std::uint64_t>(jobs) - 1) / static_cast<std::uint64_t>(jobs);
    for (int w = 0; w < jobs; ++w) {
        threads.emplace_back([&, w] {
            const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
            const std::uint64_t hi = std::min(total, lo + chunk);
            scan_range(lo, hi, bests[static_cast<std::size_t>(w)]);
        });
    }
    for (auto& t : threads) t.join();

    // Merge in ascending range order: a later candidate wins only on strict
    // precedence, which reproduces the sequential lowest-index answer.
    Best merged;
    for (Best& b : bests) {
        if (!b.set) continue;
        if (!merged.set || compare_keys(merged.key, b.key, kind) < 0) merged = std::move(b);
    }
    if (!merged.set) throw internal_error("leximin_solve: empty scan");
    return merged.alloc;
}

}  // namespace fairdiv
