#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <vector>

#include "fairdiv/goodset.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

/// Exact n-choose-k as uint64; capacity_error on overflow.
std::uint64_t binomial_u64(int n, int k);

/// The Kneser graph K(n, k): vertices are the size-k subsets of {0..n-1} in
/// colex order (equivalently, ascending bitmask order), and two vertices are
/// adjacent iff their subsets are disjoint. Immutable after construction.
class KneserGraph {
public:
    KneserGraph(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const GoodSet& vertex(int index) const { return vertices_[static_cast<std::size_t>(index)]; }
    int index_of(const GoodSet& s) const;  // usage_error if not a vertex
    const std::vector<int>& neighbors(int index) const { return adj_[static_cast<std::size_t>(index)]; }
    int degree(int index) const { return static_cast<int>(adj_[static_cast<std::size_t>(index)].size()); }
    bool adjacent(int a, int b) const;

private:
    int n_;
    int k_;
    std::vector<GoodSet> vertices_;       // ascending mask order == colex order
    std::vector<std::vector<int>> adj_;   // ascending
};

std::vector<int> bfs_distances(const KneserGraph& g, int source);

/// Query-counted score oracle f over the size-k subsets of {0..n-1}.
/// Scores are non-negative integers (which keeps the reduction valuation's
/// perturbation exactly rational).
class ScoreOracle {
public:
    ScoreOracle(int n, int k, std::vector<long long> scores_by_colex_rank);

    static ScoreOracle constant(int n, int k, long long score);
    static ScoreOracle indicator(int n, int k, const GoodSet& peak);  // 1 at peak, else 0
    static ScoreOracle random(int n, int k, std::uint64_t seed, long long max_score = 1000);

    int n() const { return n_; }
    int k() const { return k_; }

    long long query(const GoodSet& s) const;  // counts one query
    long long query_by_index(int vertex_index) const;

    std::uint64_t total_queries() const;
    std::uint64_t distinct_queries() const;

private:
    struct Counters {
        std::mutex mu;
        std::uint64_t total = 0;
        std::unordered_set<GoodSet, GoodSet::Hash> seen;
    };

    int n_;
    int k_;
    std::vector<GoodSet> vertices_;
    std::vector<long long> scores_;
    std::unique_ptr<Counters> counters_;  // behind a pointer so oracles stay movable
};

/// f(a) >= f(b) for every neighbor b. Queries a and all of its neighbors.
bool is_local_max(const KneserGraph& g, const ScoreOracle& f, int vertex_index);

/// The reduction valuation over m = 2k+1 goods; every size-k evaluation
/// forwards exactly one query to the oracle.
Valuation build_reduction_valuation(int k, std::shared_ptr<ScoreOracle> oracle);

/// Exhaustively confirms, over all 2^(2k+1) two-player allocations under the
/// reduction valuation, that (a) every EFX allocation splits the goods
/// k / k+1 and (b) an allocation is EFX iff its size-k bundle is a local
/// maximum of f on K(2k+1, k). Exhaustive, so k <= 3.
bool verify_correspondence(int k, const std::shared_ptr<ScoreOracle>& oracle);

/// B(S): vertices outside S adjacent to some vertex of S. Input and output
/// are sorted vertex-index sets.
std::vector<int> boundary(const KneserGraph& g, const std::vector<int>& s);

struct BoundaryBoundResult {
    std::uint64_t mu = 0;   // min |B(S)| over |S| = r (exact when exhaustive)
    Rational beta;          // C(n,k) - C(n-1,k-1)^2 / r - r
    bool holds = false;     // mu >= beta
    bool exhaustive = true;
};

/// mu(r) >= beta(r). Exhaustive over all size-r vertex subsets when the
/// graph has at most 12 vertices; larger graphs require a sample count and
/// the result is flagged non-exhaustive (mu is then only an upper bound on
/// the true minimum).
BoundaryBoundResult verify_boundary_bound(const KneserGraph& g, int r,
                                          std::optional<std::uint64_t> samples = std::nullopt,
                                          std::uint64_t seed = 0);

/// beta(r-1) <= beta(r) for all 2 <= r <= C(2k, k-1), with exact rationals.
bool verify_beta_monotone(int k);

/// C(2k, k-1) / (2k+1), the closed-form local-search query lower bound.
Rational lower_bound_value(int k);

int odd_graph_diameter(int k);       // BFS all-pairs; k <= 6
bool verify_diameter(int k);         // diameter of K(2k+1, k) equals k

struct CrossIntersectResult {
    bool holds = false;          // every cross-intersecting pair obeys the bound
    std::uint64_t max_product = 0;
    std::uint64_t bound = 0;     // C(n-1, k-1)^2
    bool tight = false;          // the two star families meet the bound exactly
};

/// Exhausts every cross-intersecting family pair of size-k subsets of [n]
/// (pruned: for fixed X the best partner is the set of all vertices meeting
/// every member of X). Needs C(n,k) <= 12.
CrossIntersectResult verify_cross_intersecting(int n, int k);

struct LocalSearchResult {
    int local_max = -1;
    std::uint64_t total_queries = 0;
    std::uint64_t distinct_queries = 0;
    std::uint64_t steps = 0;
};

/// Steepest-ascent local search from the canonical (colex-first) vertex, or
/// from the given start. Ties among improving neighbors break to the lowest
/// vertex index. Reports the oracle's query counters after the run.
LocalSearchResult run_local_search(const KneserGraph& g, const ScoreOracle& f,
                                   std::optional<int> start = std::nullopt);

}  // namespace fairdiv
