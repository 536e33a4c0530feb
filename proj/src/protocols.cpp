#include "fairdiv/protocols.hpp"

#include <algorithm>
#include <numeric>

#include "fairdiv/errors.hpp"

namespace fairdiv {

Allocation cut_and_choose(const Valuation& v1, const Valuation& v2, std::uint64_t max_states) {
    if (v1.goods_count() != v2.goods_count()) {
        throw usage_error("cut_and_choose: valuations over different universes");
    }
    SolveOptions options;
    options.max_states = max_states;
    const Allocation cut =
        leximin_solve({v1, v1}, ComparatorKind::leximin_plus_plus, options);
    const GoodSet piece1 = cut.bundle(0);
    const GoodSet piece2 = cut.bundle(1);
    if (v2.value(piece1) >= v2.value(piece2)) {
        return Allocation::from_bundles({piece2, piece1});
    }
    return Allocation::from_bundles({piece1, piece2});
}

std::pair<Allocation, HalfEfxTrace> half_efx(const std::vector<Valuation>& valuations) {
    if (valuations.empty()) throw usage_error("half_efx: no valuations");
    const int n = static_cast<int>(valuations.size());
    const int m = valuations[0].goods_count();
    for (const Valuation& v : valuations) {
        if (v.goods_count() != m) throw usage_error("half_efx: mixed universes");
    }

    // Round cap m(n+1)^m, saturated to avoid overflow on wide instances.
    std::uint64_t cap = static_cast<std::uint64_t>(std::max(m, 1));
    for (int g = 0; g < m; ++g) {
        if (cap > (1ULL << 60) / static_cast<std::uint64_t>(n + 1)) { cap = 1ULL << 60; break; }
        cap *= static_cast<std::uint64_t>(n + 1);
    }

    const Rational half(1, 2);
    Allocation alloc(n, m);
    GoodSet pool = GoodSet::full_set(m);
    HalfEfxTrace trace;

    while (!pool.empty()) {
        if (trace.rounds.size() >= cap) {
            throw internal_error("half_efx: exceeded the m(n+1)^m round bound");
        }
        HalfEfxRound round;
        round.pool_before = pool.goods();

        const int star = pool.lowest();
        pool = pool.minus(star);
        round.good = star;

        const int j = find_unenvied_player(envy_graph(alloc, valuations));
        round.recipient = j;
        alloc.add_good(j, star);

        // First violator in (player, good) ascending order:
        // v_i(A_i) < 1/2 * v_i(A_j \ {g}) for some g in the grown bundle.
        std::optional<int> violator;
        const GoodSet grown = alloc.bundle(j);
        for (int i = 0; i < n && !violator; ++i) {
            if (i == j) continue;
            const Valuation& vi = valuations[static_cast<std::size_t>(i)];
            const Rational own = vi.value(alloc.bundle(i));
            grown.for_each([&](int g) {
                if (!violator && own < half * vi.value(grown.minus(g))) violator = i;
            });
        }

        if (violator) {
            const int i = *violator;
            round.reassigned_to = i;
            pool = pool.union_with(alloc.bundle(i));
            alloc.set_bundle(i, GoodSet::empty_set(m));
            alloc.remove_good(j, star);
            alloc.add_good(i, star);
        }

        alloc = eliminate_envy_cycles(std::move(alloc), valuations);
        round.after = alloc;
        trace.rounds.push_back(std::move(round));
    }
    return {std::move(alloc), std::move(trace)};
}

namespace {

// Ranking agreement check: every pair of goods must compare the same way
// under every player's values. Returns the goods in descending shared rank,
// ties by ascending good index.
std::vector<int> shared_ranking(const std::vector<Valuation>& valuations) {
    const int n = static_cast<int>(valuations.size());
    const int m = valuations[0].goods_count();
    std::vector<std::vector<Rational>> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (valuations[static_cast<std::size_t>(i)].kind() != Valuation::Kind::additive) {
            throw usage_error("same_ranking_efx: player " + std::to_string(i) +
                              " does not have an additive valuation");
        }
        vals[static_cast<std::size_t>(i)] = valuations[static_cast<std::size_t>(i)].additive_values();
    }
    for (int g1 = 0; g1 < m; ++g1) {
        for (int g2 = g1 + 1; g2 < m; ++g2) {
            const int sign0 = vals[0][static_cast<std::size_t>(g1)] < vals[0][static_cast<std::size_t>(g2)]
                                  ? -1
                                  : (vals[0][static_cast<std::size_t>(g1)] > vals[0][static_cast<std::size_t>(g2)] ? 1 : 0);
            for (int i = 1; i < n; ++i) {
                const auto& a = vals[static_cast<std::size_t>(i)][static_cast<std::size_t>(g1)];
                const auto& b = vals[static_cast<std::size_t>(i)][static_cast<std::size_t>(g2)];
                const int sign = a < b ? -1 : (a > b ? 1 : 0);
                if (sign != sign0) {
                    throw usage_error("same_ranking_efx: players 0 and " + std::to_string(i) +
                                      " disagree on the ranking of goods " + std::to_string(g1) +
                                      " and " + std::to_string(g2));
                }
            }
        }
    }
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& va = vals[0][static_cast<std::size_t>(a)];
        const auto& vb = vals[0][static_cast<std::size_t>(b)];
        if (va != vb) return va > vb;
        return a < b;
    });
    return order;
}

// Bundle utilities maintained incrementally: util[i][j] = v_i(bundle of j).
// Keeps the protocol linear in m for fixed n instead of re-evaluating
// bundles from scratch each round.
struct UtilityMatrix {
    int n;
    std::vector<std::vector<Rational>> util;

    explicit UtilityMatrix(int players) : n(players) {
        util.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    }

    EnvyGraph graph() const {
        EnvyGraph g;
        g.players = n;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j && util[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] <
                                  util[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                    g.edges.emplace_back(i, j);
                }
            }
        }
        return g;
    }

    void add_good_to(int j, const std::vector<Valuation>& valuations, int good) {
        for (int i = 0; i < n; ++i) {
            util[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                valuations[static_cast<std::size_t>(i)].additive_values()[static_cast<std::size_t>(good)];
        }
    }

    // Everyone on the cycle takes the bundle of the player they envy.
    void rotate(const std::vector<int>& cycle, std::vector<GoodSet>& bundles) {
        std::vector<GoodSet> grabbed;
        std::vector<std::vector<Rational>> grabbed_cols(static_cast<std::size_t>(n));
        grabbed.reserve(cycle.size());
        for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
            const int from = cycle[(pos + 1) % cycle.size()];
            grabbed.push_back(bundles[static_cast<std::size_t>(from)]);
            for (int i = 0; i < n; ++i) {
                grabbed_cols[static_cast<std::size_t>(i)].push_back(
                    util[static_cast<std::size_t>(i)][static_cast<std::size_t>(from)]);
            }
        }
        for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
            const int to = cycle[pos];
            bundles[static_cast<std::size_t>(to)] = grabbed[pos];
            for (int i = 0; i < n; ++i) {
                util[static_cast<std::size_t>(i)][static_cast<std::size_t>(to)] =
                    grabbed_cols[static_cast<std::size_t>(i)][pos];
            }
        }
    }
};

}  // namespace

Allocation same_ranking_efx(const std::vector<Valuation>& valuations,
                            std::vector<Allocation>* round_snapshots) {
    if (valuations.empty()) throw usage_error("same_ranking_efx: no valuations");
    const int n = static_cast<int>(valuations.size());
    const int m = valuations[0].goods_count();
    for (const Valuation& v : valuations) {
        if (v.goods_count() != m) throw usage_error("same_ranking_efx: mixed universes");
    }
    const std::vector<int> order = shared_ranking(valuations);

    std::vector<GoodSet> bundles(static_cast<std::size_t>(n), GoodSet::empty_set(m));
    UtilityMatrix mat(n);

    for (int g : order) {
        const int j = find_unenvied_player(mat.graph());
        bundles[static_cast<std::size_t>(j)] = bundles[static_cast<std::size_t>(j)].plus(g);
        mat.add_good_to(j, valuations, g);

        EnvyGraph graph = mat.graph();
        while (true) {
            const std::vector<int> cycle = first_envy_cycle(graph);
            if (cycle.empty()) break;
            mat.rotate(cycle, bundles);
            EnvyGraph next = mat.graph();
            if (next.edge_count() >= graph.edge_count()) {
                throw internal_error("same_ranking_efx: rotation failed to reduce envy edges");
            }
            graph = std::move(next);
        }
        if (round_snapshots) round_snapshots->push_back(Allocation::from_bundles(bundles));
    }
    return Allocation::from_bundles(std::move(bundles));
}

Allocation two_player_additive_efx(const Valuation& v1, const Valuation& v2) {
    if (v1.kind() != Valuation::Kind::additive || v2.kind() != Valuation::Kind::additive) {
        throw usage_error("two_player_additive_efx: both valuations must be additive");
    }
    if (v1.goods_count() != v2.goods_count()) {
        throw usage_error("two_player_additive_efx: valuations over different universes");
    }
    const Allocation cut = same_ranking_efx({v1, v1});
    const GoodSet piece1 = cut.bundle(0);
    const GoodSet piece2 = cut.bundle(1);
    if (v2.value(piece1) >= v2.value(piece2)) {
        return Allocation::from_bundles({piece2, piece1});
    }
    return Allocation::from_bundles({piece1, piece2});
}

Allocation efx_po_additive_identical(const Valuation& v, int players, std::uint64_t max_states) {
    if (v.kind() != Valuation::Kind::additive) {
        throw usage_error("efx_po_additive_identical: valuation must be additive");
    }
    if (players < 1) throw usage_error("efx_po_additive_identical: need at least one player");
    const int m = v.goods_count();
    const std::vector<Rational>& per_good = v.additive_values();

    std::vector<int> positive_goods;
    std::vector<int> zero_goods;
    for (int g = 0; g < m; ++g) {
        if (per_good[static_cast<std::size_t>(g)].is_zero()) zero_goods.push_back(g);
        else positive_goods.push_back(g);
    }

    // Plain leximin over the goods with positive value; nonzero marginal
    // utility holds there, so that sub-allocation is EFX and PO.
    std::vector<Rational> reduced_values;
    reduced_values.reserve(positive_goods.size());
    for (int g : positive_goods) reduced_values.push_back(per_good[static_cast<std::size_t>(g)]);
    const Valuation reduced = Valuation::additive(std::move(reduced_values));

    SolveOptions options;
    options.max_states = max_states;
    const Allocation sub = leximin_solve(std::vector<Valuation>(static_cast<std::size_t>(players), reduced),
                                         ComparatorKind::leximin, options);

    std::vector<GoodSet> bundles(static_cast<std::size_t>(players), GoodSet::empty_set(m));
    for (int i = 0; i < players; ++i) {
        sub.bundle(i).for_each([&](int local) {
            bundles[static_cast<std::size_t>(i)] =
                bundles[static_cast<std::size_t>(i)].plus(positive_goods[static_cast<std::size_t>(local)]);
        });
    }

    // All zero-value goods go to the lowest-index minimum-utility player.
    int argmin = 0;
    Rational best = v.value(bundles[0]);
    for (int i = 1; i < players; ++i) {
        const Rational u = v.value(bundles[static_cast<std::size_t>(i)]);
        if (u < best) { best = u; argmin = i; }
    }
    for (int g : zero_goods) {
        bundles[static_cast<std::size_t>(argmin)] = bundles[static_cast<std::size_t>(argmin)].plus(g);
    }
    return Allocation::from_bundles(std::move(bundles));
}

Allocation max_nash_welfare(const std::vector<Valuation>& valuations, std::uint64_t max_states) {
    if (valuations.empty()) throw usage_error("max_nash_welfare: no valuations");
    const int n = static_cast<int>(valuations.size());
    const int m = valuations[0].goods_count();
    for (const Valuation& v : valuations) {
        if (v.goods_count() != m) throw usage_error("max_nash_welfare: mixed universes");
    }

    bool have_best = false;
    int best_positive = -1;
    Rational best_product;
    Allocation best(n, m);

    for_each_allocation(
        n, m,
        [&](const Allocation& a, std::uint64_t) {
            int positive = 0;
            Rational product(1);
            for (int i = 0; i < n; ++i) {
                const Rational u = valuations[static_cast<std::size_t>(i)].value(a.bundle(i));
                if (u.is_positive()) {
                    ++positive;
                    product *= u;
                }
            }
            const bool better = !have_best || positive > best_positive ||
                                (positive == best_positive && product > best_product);
            if (better) {
                have_best = true;
                best_positive = positive;
                best_product = std::move(product);
                best = a;
            }
        },
        max_states);
    return best;
}

}  // namespace fairdiv
