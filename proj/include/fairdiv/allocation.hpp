#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/goodset.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

/// Default ceiling on exhaustive n^m scans (seconds-scale desk runs).
inline constexpr std::uint64_t kDefaultEnumCap = 20'000'000;

/// An assignment of each good to at most one of n players. Bundles are
/// pairwise disjoint by construction; the allocation is complete when every
/// good is assigned.
class Allocation {
public:
    Allocation(int players, int goods);

    /// Builds from explicit good-index bundles; validates disjointness.
    static Allocation of(int goods, std::vector<std::vector<int>> bundles);
    static Allocation from_bundles(std::vector<GoodSet> bundles);

    int players() const { return static_cast<int>(bundles_.size()); }
    int goods_count() const { return m_; }
    const GoodSet& bundle(int player) const;
    const std::vector<GoodSet>& bundles() const { return bundles_; }

    GoodSet assigned() const;
    bool complete() const { return assigned().is_full(); }

    void add_good(int player, int good);     // usage_error if already assigned
    void remove_good(int player, int good);  // usage_error if not in that bundle
    void set_bundle(int player, GoodSet s);  // re-validates disjointness

    /// Position of a complete allocation in canonical enumeration order:
    /// the base-n numeral whose digit for good g is the receiving player,
    /// good 0 least significant.
    std::uint64_t canonical_index() const;
    static Allocation from_canonical_index(int players, int goods, std::uint64_t index);

    bool operator==(const Allocation& o) const { return m_ == o.m_ && bundles_ == o.bundles_; }
    bool operator!=(const Allocation& o) const { return !(*this == o); }

    std::string to_string() const;  // e.g. "({0,2},{1})"

private:
    int m_;
    std::vector<GoodSet> bundles_;
};

/// n^m, or a capacity_error when it exceeds max_states.
std::uint64_t allocation_count(int players, int goods, std::uint64_t max_states = kDefaultEnumCap);

/// Visits every complete allocation exactly once in canonical order.
/// The callback gets (allocation, canonical index) and returns false to stop.
template <typename F>
void for_each_allocation_until(int players, int goods, F&& f,
                               std::uint64_t max_states = kDefaultEnumCap) {
    const std::uint64_t total = allocation_count(players, goods, max_states);
    std::vector<int> digits(static_cast<std::size_t>(goods), 0);
    Allocation alloc(players, goods);
    for (int g = 0; g < goods; ++g) alloc.add_good(0, g);
    for (std::uint64_t index = 0;; ++index) {
        if (!f(static_cast<const Allocation&>(alloc), index)) return;
        if (index + 1 == total) return;
        int g = 0;
        while (digits[static_cast<std::size_t>(g)] == players - 1) {
            alloc.remove_good(players - 1, g);
            alloc.add_good(0, g);
            digits[static_cast<std::size_t>(g)] = 0;
            ++g;
        }
        alloc.remove_good(digits[static_cast<std::size_t>(g)], g);
        alloc.add_good(digits[static_cast<std::size_t>(g)] + 1, g);
        ++digits[static_cast<std::size_t>(g)];
    }
}

template <typename F>
void for_each_allocation(int players, int goods, F&& f, std::uint64_t max_states = kDefaultEnumCap) {
    for_each_allocation_until(
        players, goods,
        [&](const Allocation& a, std::uint64_t index) {
            f(a, index);
            return true;
        },
        max_states);
}

/// Stream interface over the same canonical order.
class AllocationEnumerator {
public:
    AllocationEnumerator(int players, int goods, std::uint64_t max_states = kDefaultEnumCap);
    std::optional<Allocation> next();
    std::uint64_t total() const { return total_; }

private:
    int players_;
    int goods_;
    std::uint64_t total_;
    std::uint64_t index_ = 0;
};

/// Directed envy graph: edge (i, j) iff v_i(A_i) < v_i(A_j).
struct EnvyGraph {
    int players = 0;
    std::vector<std::pair<int, int>> edges;  // ascending (i, j)

    bool has_edge(int i, int j) const;
    std::size_t edge_count() const { return edges.size(); }
    std::vector<int> in_degree() const;
    std::vector<std::vector<int>> out_neighbors() const;  // ascending per player
    bool acyclic() const;
};

EnvyGraph envy_graph(const Allocation& a, const std::vector<Valuation>& valuations);

/// Lowest-index player with no incoming envy edge. internal_error when the
/// graph has no such player (i.e. it contains a cycle).
int find_unenvied_player(const EnvyGraph& g);

/// First envy cycle under the deterministic search rule (depth-first from
/// the lowest-index player with outgoing edges, lowest-index out-neighbor
/// first). Returned in edge order: each element envies the next, wrapping
/// around. Empty when the graph is acyclic.
std::vector<int> first_envy_cycle(const EnvyGraph& g);

/// Rotates bundles along envy cycles until the envy graph is acyclic.
/// Each rotation hands every cycle member the bundle of the player they
/// envy, strictly increasing their own utility and strictly decreasing the
/// envy-graph edge count. Deterministic: depth-first search from the
/// lowest-index envious player, lowest-index out-neighbor first, rotating
/// the first cycle closed.
Allocation eliminate_envy_cycles(Allocation a, const std::vector<Valuation>& valuations);

struct FairnessWitness {
    int envious = -1;
    int envied = -1;
    std::optional<int> good;  // the removal that fails (EFX/c-EFX)
};

/// Exact fairness flags with a witness for every false flag.
struct FairnessReport {
    bool envy_free = true;
    bool ef1 = true;
    bool efx = true;
    std::vector<std::pair<Rational, bool>> c_efx;  // in request order
    std::optional<bool> pareto_optimal;

    std::optional<FairnessWitness> envy_witness;
    std::optional<FairnessWitness> ef1_witness;
    std::optional<FairnessWitness> efx_witness;
    std::vector<std::optional<FairnessWitness>> c_efx_witnesses;
    std::optional<Allocation> dominating_allocation;  // lowest canonical index

    bool c_efx_at(const Rational& c) const;  // usage_error when c was not requested
};

/// Evaluates EF / EF1 / EFX / c-EFX for each requested c, and (optionally)
/// Pareto optimality by exhaustive domination scan over complete
/// allocations. Pareto requires a complete allocation and n^m within
/// max_states.
FairnessReport fairness_report(const Allocation& a, const std::vector<Valuation>& valuations,
                               const std::vector<Rational>& c_values = {},
                               bool include_pareto = false,
                               std::uint64_t max_states = kDefaultEnumCap);

bool is_efx(const Allocation& a, const std::vector<Valuation>& valuations);
bool is_c_efx(const Allocation& a, const std::vector<Valuation>& valuations, const Rational& c);

/// True when b makes some player strictly better off than a and none worse.
bool dominates(const Allocation& b, const Allocation& a, const std::vector<Valuation>& valuations);

struct EfxExistenceReport {
    bool require_po = false;
    bool exists = false;
    std::vector<Allocation> witnesses;  // every qualifying allocation, canonical order
};

/// Cap for the require_po path of efx_existence_report, which needs all
/// utility vectors in memory and a quadratic domination scan.
inline constexpr std::uint64_t kRequirePoCap = 16'384;

/// Exhaustively classifies every complete allocation as EFX (and Pareto
/// optimal when require_po), returning all qualifying allocations.
EfxExistenceReport efx_existence_report(const std::vector<Valuation>& valuations, bool require_po,
                                        std::uint64_t max_states = kDefaultEnumCap, int jobs = 1);

}  // namespace fairdiv
