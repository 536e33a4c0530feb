#include "fairdiv/allocation.hpp"

#include <algorithm>
#include <thread>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

void check_instance(const Allocation& a, const std::vector<Valuation>& valuations) {
    if (valuations.size() != static_cast<std::size_t>(a.players())) {
        throw usage_error("allocation: expected " + std::to_string(a.players()) +
                          " valuations, got " + std::to_string(valuations.size()));
    }
    for (const Valuation& v : valuations) {
        if (v.goods_count() != a.goods_count()) {
            throw usage_error("allocation: valuation universe " + std::to_string(v.goods_count()) +
                              " does not match allocation universe " +
                              std::to_string(a.goods_count()));
        }
    }
}

std::vector<Rational> own_utilities(const Allocation& a, const std::vector<Valuation>& valuations) {
    std::vector<Rational> u;
    u.reserve(static_cast<std::size_t>(a.players()));
    for (int i = 0; i < a.players(); ++i) u.push_back(valuations[static_cast<std::size_t>(i)].value(a.bundle(i)));
    return u;
}

}  // namespace

Allocation::Allocation(int players, int goods) : m_(goods) {
    if (players < 1) throw usage_error("Allocation: need at least one player");
    if (goods < 0 || goods > GoodSet::kMaxGoods) throw usage_error("Allocation: bad goods count");
    bundles_.assign(static_cast<std::size_t>(players), GoodSet::empty_set(goods));
}

Allocation Allocation::of(int goods, std::vector<std::vector<int>> bundles) {
    std::vector<GoodSet> sets;
    sets.reserve(bundles.size());
    for (const auto& b : bundles) sets.push_back(GoodSet::of(goods, b));
    return from_bundles(std::move(sets));
}

Allocation Allocation::from_bundles(std::vector<GoodSet> bundles) {
    if (bundles.empty()) throw usage_error("Allocation: need at least one player");
    Allocation a(static_cast<int>(bundles.size()), bundles[0].universe_size());
    GoodSet seen = GoodSet::empty_set(a.m_);
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        if (bundles[i].universe_size() != a.m_) throw usage_error("Allocation: bundles over different universes");
        if (seen.intersects(bundles[i])) throw usage_error("Allocation: bundles overlap");
        seen = seen.union_with(bundles[i]);
    }
    a.bundles_ = std::move(bundles);
    return a;
}

const GoodSet& Allocation::bundle(int player) const {
    if (player < 0 || player >= players()) throw usage_error("Allocation: bad player index");
    return bundles_[static_cast<std::size_t>(player)];
}

GoodSet Allocation::assigned() const {
    GoodSet all = GoodSet::empty_set(m_);
    for (const GoodSet& b : bundles_) all = all.union_with(b);
    return all;
}

void Allocation::add_good(int player, int good) {
    if (player < 0 || player >= players()) throw usage_error("Allocation: bad player index");
    if (assigned().contains(good)) {
        throw usage_error("Allocation: good " + std::to_string(good) + " already assigned");
    }
    bundles_[static_cast<std::size_t>(player)] = bundles_[static_cast<std::size_t>(player)].plus(good);
}

void Allocation::remove_good(int player, int good) {
    if (player < 0 || player >= players()) throw usage_error("Allocation: bad player index");
    if (!bundles_[static_cast<std::size_t>(player)].contains(good)) {
        throw usage_error("Allocation: good " + std::to_string(good) + " not in that bundle");
    }
    bundles_[static_cast<std::size_t>(player)] = bundles_[static_cast<std::size_t>(player)].minus(good);
}

void Allocation::set_bundle(int player, GoodSet s) {
    if (player < 0 || player >= players()) throw usage_error("Allocation: bad player index");
    if (s.universe_size() != m_) throw usage_error("Allocation: bundle universe mismatch");
    for (int i = 0; i < players(); ++i) {
        if (i != player && bundles_[static_cast<std::size_t>(i)].intersects(s)) {
            throw usage_error("Allocation: bundle overlaps player " + std::to_string(i));
        }
    }
    bundles_[static_cast<std::size_t>(player)] = std::move(s);
}

std::uint64_t Allocation::canonical_index() const {
    if (!complete()) throw usage_error("Allocation: canonical index of a partial allocation");
    const std::uint64_t n = static_cast<std::uint64_t>(players());
    std::uint64_t index = 0;
    for (int g = m_ - 1; g >= 0; --g) {
        int owner = -1;
        for (int i = 0; i < players(); ++i) {
            if (bundles_[static_cast<std::size_t>(i)].contains(g)) { owner = i; break; }
        }
        index = index * n + static_cast<std::uint64_t>(owner);
    }
    return index;
}

Allocation Allocation::from_canonical_index(int players, int goods, std::uint64_t index) {
    Allocation a(players, goods);
    const std::uint64_t n = static_cast<std::uint64_t>(players);
    for (int g = 0; g < goods; ++g) {
        a.add_good(static_cast<int>(index % n), g);
        index /= n;
    }
    if (index != 0) throw usage_error("Allocation: canonical index out of range");
    return a;
}

std::string Allocation::to_string() const {
    std::string out = "(";
    for (int i = 0; i < players(); ++i) {
        if (i > 0) out += ",";
        out += bundles_[static_cast<std::size_t>(i)].to_string();
    }
    out += ")";
    return out;
}

std::uint64_t allocation_count(int players, int goods, std::uint64_t max_states) {
    if (players < 1) throw usage_error("allocation_count: need at least one player");
    if (goods < 0) throw usage_error("allocation_count: negative goods count");
    std::uint64_t total = 1;
    for (int g = 0; g < goods; ++g) {
        if (total > max_states / static_cast<std::uint64_t>(players)) {
            throw capacity_error("enumeration of " + std::to_string(players) + "^" +
                                 std::to_string(goods) + " allocations exceeds cap " +
                                 std::to_string(max_states));
        }
        total *= static_cast<std::uint64_t>(players);
    }
    if (total > max_states) {
        throw capacity_error("enumeration of " + std::to_string(players) + "^" + std::to_string(goods) +
                             " allocations exceeds cap " + std::to_string(max_states));
    }
    return total;
}

AllocationEnumerator::AllocationEnumerator(int players, int goods, std::uint64_t max_states)
    : players_(players), goods_(goods), total_(allocation_count(players, goods, max_states)) {}

std::optional<Allocation> AllocationEnumerator::next() {
    if (index_ >= total_) return std::nullopt;
    return Allocation::from_canonical_index(players_, goods_, index_++);
}

bool EnvyGraph::has_edge(int i, int j) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<int> EnvyGraph::in_degree() const {
    std::vector<int> deg(static_cast<std::size_t>(players), 0);
    for (const auto& [i, j] : edges) ++deg[static_cast<std::size_t>(j)];
    return deg;
}

std::vector<std::vector<int>> EnvyGraph::out_neighbors() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(players));
    for (const auto& [i, j] : edges) out[static_cast<std::size_t>(i)].push_back(j);
    return out;
}

bool EnvyGraph::acyclic() const {
    // Kahn's algorithm.
    std::vector<int> deg = in_degree();
    const auto out = out_neighbors();
    std::vector<int> queue;
    for (int i = 0; i < players; ++i) {
        if (deg[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
    }
    int removed = 0;
    while (!queue.empty()) {
        const int u = queue.back();
        queue.pop_back();
        ++removed;
        for (int w : out[static_cast<std::size_t>(u)]) {
            if (--deg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
        }
    }
    return removed == players;
}

EnvyGraph envy_graph(const Allocation& a, const std::vector<Valuation>& valuations) {
    check_instance(a, valuations);
    EnvyGraph g;
    g.players = a.players();
    const std::vector<Rational> own = own_utilities(a, valuations);
    for (int i = 0; i < a.players(); ++i) {
        for (int j = 0; j < a.players(); ++j) {
            if (i == j) continue;
            if (own[static_cast<std::size_t>(i)] < valuations[static_cast<std::size_t>(i)].value(a.bundle(j))) {
                g.edges.emplace_back(i, j);
            }
        }
    }
    return g;
}

int find_unenvied_player(const EnvyGraph& g) {
    const std::vector<int> deg = g.in_degree();
    for (int i = 0; i < g.players; ++i) {
        if (deg[static_cast<std::size_t>(i)] == 0) return i;
    }
    throw internal_error("find_unenvied_player: every player is envied (envy graph has a cycle)");
}

std::vector<int> first_envy_cycle(const EnvyGraph& g) {
    const auto out = g.out_neighbors();
    std::vector<int> color(static_cast<std::size_t>(g.players), 0);  // 0 new, 1 on stack, 2 done

    std::vector<int> stack;
    // Recursive lambda via explicit stack of (node, next-neighbor-position).
    for (int start = 0; start < g.players; ++start) {
        if (color[static_cast<std::size_t>(start)] != 0 || out[static_cast<std::size_t>(start)].empty()) continue;
        std::vector<std::pair<int, std::size_t>> frames{{start, 0}};
        color[static_cast<std::size_t>(start)] = 1;
        stack = {start};
        while (!frames.empty()) {
            auto& [node, pos] = frames.back();
            if (pos < out[static_cast<std::size_t>(node)].size()) {
                const int next = out[static_cast<std::size_t>(node)][pos++];
                if (color[static_cast<std::size_t>(next)] == 1) {
                    // Cycle closed: the stack suffix starting at `next`.
                    const auto it = std::find(stack.begin(), stack.end(), next);
                    return std::vector<int>(it, stack.end());
                }
                if (color[static_cast<std::size_t>(next)] == 0) {
                    color[static_cast<std::size_t>(next)] = 1;
                    stack.push_back(next);
                    frames.emplace_back(next, 0);
                }
            } else {
                color[static_cast<std::size_t>(node)] = 2;
                stack.pop_back();
                frames.pop_back();
            }
        }
    }
    return {};
}

Allocation eliminate_envy_cycles(Allocation a, const std::vector<Valuation>& valuations) {
    check_instance(a, valuations);
    EnvyGraph g = envy_graph(a, valuations);
    while (true) {
        const std::vector<int> cycle = first_envy_cycle(g);
        if (cycle.empty()) return a;
        // Each member takes the bundle of the player they envy (their
        // successor on the cycle).
        std::vector<GoodSet> grabbed;
        grabbed.reserve(cycle.size());
        for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
            grabbed.push_back(a.bundle(cycle[(pos + 1) % cycle.size()]));
        }
        std::vector<GoodSet> bundles = a.bundles();
        for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
            bundles[static_cast<std::size_t>(cycle[pos])] = grabbed[pos];
        }
        Allocation rotated = Allocation::from_bundles(std::move(bundles));
        EnvyGraph h = envy_graph(rotated, valuations);
        if (h.edge_count() >= g.edge_count()) {
            throw internal_error("eliminate_envy_cycles: rotation failed to reduce envy edges");
        }
        a = std::move(rotated);
        g = std::move(h);
    }
}

bool FairnessReport::c_efx_at(const Rational& c) const {
    for (const auto& [value, holds] : c_efx) {
        if (value == c) return holds;
    }
    throw usage_error("FairnessReport: c value " + c.str() + " was not requested");
}

namespace {

// Shared EF/EF1/EFX/c-EFX scan. Calls `on_fail(flag_index, witness)` for the
// first violation of each flag, where flag 0 = EF, 1 = EF1, 2 = EFX and
// 3 + t = c_values[t].
struct PairScanResult {
    bool envy_free = true, ef1 = true, efx = true;
    std::vector<bool> c_holds;
    std::optional<FairnessWitness> envy_w, ef1_w, efx_w;
    std::vector<std::optional<FairnessWitness>> c_w;
};

PairScanResult scan_pairs(const Allocation& a, const std::vector<Valuation>& valuations,
                          const std::vector<Rational>& c_values) {
    PairScanResult r;
    r.c_holds.assign(c_values.size(), true);
    r.c_w.resize(c_values.size());
    const std::vector<Rational> own = own_utilities(a, valuations);
    for (int i = 0; i < a.players(); ++i) {
        const Valuation& vi = valuations[static_cast<std::size_t>(i)];
        for (int j = 0; j < a.players(); ++j) {
            if (i == j) continue;
            const GoodSet& other = a.bundle(j);
            const Rational other_value = vi.value(other);
            const bool envies = own[static_cast<std::size_t>(i)] < other_value;
            if (envies && r.envy_free) {
                r.envy_free = false;
                r.envy_w = FairnessWitness{i, j, std::nullopt};
            }
            // EF1 only constrains pairs where i envies j; EFX and c-EFX
            // constrain every pair.
            bool ef1_ok = !envies;
            bool need_any = !ef1_ok || r.efx ||
                            std::find(r.c_holds.begin(), r.c_holds.end(), true) != r.c_holds.end();
            if (!need_any) continue;
            other.for_each([&](int g) {
                const Rational reduced = vi.value(other.minus(g));
                if (!ef1_ok && own[static_cast<std::size_t>(i)] >= reduced) ef1_ok = true;
                if (r.efx && own[static_cast<std::size_t>(i)] < reduced) {
                    r.efx = false;
                    r.efx_w = FairnessWitness{i, j, g};
                }
                for (std::size_t t = 0; t < c_values.size(); ++t) {
                    if (r.c_holds[t] && own[static_cast<std::size_t>(i)] < c_values[t] * reduced) {
                        r.c_holds[t] = false;
                        r.c_w[t] = FairnessWitness{i, j, g};
                    }
                }
            });
            if (!ef1_ok && r.ef1) {
                r.ef1 = false;
                r.ef1_w = FairnessWitness{i, j, std::nullopt};
            }
        }
    }
    return r;
}

}  // namespace

FairnessReport fairness_report(const Allocation& a, const std::vector<Valuation>& valuations,
                               const std::vector<Rational>& c_values, bool include_pareto,
                               std::uint64_t max_states) {
    check_instance(a, valuations);
    for (const Rational& c : c_values) {
        if (c.is_negative() || c > Rational(1)) {
            throw usage_error("fairness_report: c must lie in [0, 1], got " + c.str());
        }
    }

    FairnessReport rep;
    PairScanResult scan = scan_pairs(a, valuations, c_values);
    rep.envy_free = scan.envy_free;
    rep.ef1 = scan.ef1;
    rep.efx = scan.efx;
    rep.envy_witness = scan.envy_w;
    rep.ef1_witness = scan.ef1_w;
    rep.efx_witness = scan.efx_w;
    for (std::size_t t = 0; t < c_values.size(); ++t) {
        rep.c_efx.emplace_back(c_values[t], scan.c_holds[t]);
        rep.c_efx_witnesses.push_back(scan.c_w[t]);
    }

    if (include_pareto) {
        if (!a.complete()) {
            throw usage_error("fairness_report: Pareto optimality is defined over complete allocations only");
        }
        bool po = true;
        for_each_allocation_until(
            a.players(), a.goods_count(),
            [&](const Allocation& b, std::uint64_t) {
                if (dominates(b, a, valuations)) {
                    po = false;
                    rep.dominating_allocation = b;
                    return false;
                }
                return true;
            },
            max_states);
        rep.pareto_optimal = po;
    }
    return rep;
}

bool is_efx(const Allocation& a, const std::vector<Valuation>& valuations) {
    check_instance(a, valuations);
    const std::vector<Rational> own = own_utilities(a, valuations);
    for (int i = 0; i < a.players(); ++i) {
        const Valuation& vi = valuations[static_cast<std::size_t>(i)];
        for (int j = 0; j < a.players(); ++j) {
            if (i == j) continue;
            const GoodSet& other = a.bundle(j);
            bool ok = true;
            other.for_each([&](int g) {
                if (ok && own[static_cast<std::size_t>(i)] < vi.value(other.minus(g))) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

bool is_c_efx(const Allocation& a, const std::vector<Valuation>& valuations, const Rational& c) {
    check_instance(a, valuations);
    const std::vector<Rational> own = own_utilities(a, valuations);
    for (int i = 0; i < a.players(); ++i) {
        const Valuation& vi = valuations[static_cast<std::size_t>(i)];
        for (int j = 0; j < a.players(); ++j) {
            if (i == j) continue;
            const GoodSet& other = a.bundle(j);
            bool ok = true;
            other.for_each([&](int g) {
                if (ok && own[static_cast<std::size_t>(i)] < c * vi.value(other.minus(g))) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

bool dominates(const Allocation& b, const Allocation& a, const std::vector<Valuation>& valuations) {
    bool strict = false;
    for (int i = 0; i < a.players(); ++i) {
        const Rational va = valuations[static_cast<std::size_t>(i)].value(a.bundle(i));
        const Rational vb = valuations[static_cast<std::size_t>(i)].value(b.bundle(i));
        if (vb < va) return false;
        if (vb > va) strict = true;
    }
    return strict;
}

EfxExistenceReport efx_existence_report(const std::vector<Valuation>& valuations, bool require_po,
                                        std::uint64_t max_states, int jobs) {
    if (valuations.empty()) throw usage_error("efx_existence_report: no valuations");
    const int n = static_cast<int>(valuations.size());
    const int m = valuations[0].goods_count();
    for (const Valuation& v : valuations) {
        if (v.goods_count() != m) throw usage_error("efx_existence_report: mixed universes");
    }

    EfxExistenceReport rep;
    rep.require_po = require_po;

    if (!require_po) {
        const std::uint64_t total = allocation_count(n, m, max_states);
        if (jobs > 1 && total >= 1024) {
            const int workers = std::min<int>(jobs, 16);
            std::vector<std::vector<Allocation>> found(static_cast<std::size_t>(workers));
            std::vector<std::thread> threads;
            const std::uint64_t chunk = (total + static_cast<std::uint64_t>(workers) - 1) /
                                        static_cast<std::uint64_t>(workers);
            for (int w = 0; w < workers; ++w) {
                threads.emplace_back([&, w] {
                    const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
                    const std::uint64_t hi = std::min(total, lo + chunk);
                    for (std::uint64_t idx = lo; idx < hi; ++idx) {
                        Allocation a = Allocation::from_canonical_index(n, m, idx);
                        if (is_efx(a, valuations)) found[static_cast<std::size_t>(w)].push_back(std::move(a));
                    }
                });
            }
            for (auto& t : threads) t.join();
            for (auto& part : found) {
                for (auto& a : part) rep.witnesses.push_back(std::move(a));
            }
        } else {
            for_each_allocation(
                n, m,
                [&](const Allocation& a, std::uint64_t) {
                    if (is_efx(a, valuations)) rep.witnesses.push_back(a);
                },
                max_states);
        }
        rep.exists = !rep.witnesses.empty();
        return rep;
    }

    // require_po: pre-compute all utility vectors, then intersect the EFX
    // set with the undominated set.
    const std::uint64_t total = allocation_count(n, m, std::min(max_states, kRequirePoCap));
    std::vector<std::vector<Rational>> utils(total);
    std::vector<Allocation> all;
    all.reserve(total);
    for_each_allocation(
        n, m,
        [&](const Allocation& a, std::uint64_t idx) {
            utils[idx] = own_utilities(a, valuations);
            all.push_back(a);
        },
        std::min(max_states, kRequirePoCap));

    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (!is_efx(all[idx], valuations)) continue;
        bool po = true;
        for (std::uint64_t other = 0; other < total && po; ++other) {
            if (other == idx) continue;
            bool strict = false, weak = true;
            for (int i = 0; i < n && weak; ++i) {
                const auto& ou = utils[other][static_cast<std::size_t>(i)];
                const auto& au = utils[idx][static_cast<std::size_t>(i)];
                if (ou < au) weak = false;
                else if (ou > au) strict = true;
            }
            if (weak && strict) po = false;
        }
        if (po) rep.witnesses.push_back(all[idx]);
    }
    rep.exists = !rep.witnesses.empty();
    return rep;
}

}  // namespace fairdiv
