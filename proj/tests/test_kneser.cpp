#include <doctest.h>

#include <memory>

#include "fairdiv/errors.hpp"
#include "fairdiv/kneser.hpp"
#include "fairdiv/leximin.hpp"

using namespace fairdiv;

TEST_CASE("kneser graph shape: vertex counts and odd-graph degree k+1") {
    for (int k = 1; k <= 5; ++k) {
        const KneserGraph g(2 * k + 1, k);
        CHECK(g.vertex_count() == static_cast<int>(binomial_u64(2 * k + 1, k)));
        for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) == k + 1);
    }
    const KneserGraph petersen(5, 2);
    CHECK(petersen.vertex_count() == 10);
    // Adjacency is disjointness: {0,1} ~ {2,3} but not {1,2}.
    CHECK(petersen.adjacent(petersen.index_of(GoodSet::of(5, {0, 1})),
                            petersen.index_of(GoodSet::of(5, {2, 3}))));
    CHECK_FALSE(petersen.adjacent(petersen.index_of(GoodSet::of(5, {0, 1})),
                                  petersen.index_of(GoodSet::of(5, {1, 2}))));
}

TEST_CASE("score oracle counts queries and rejects non-vertices") {
    const ScoreOracle f = ScoreOracle::random(5, 2, 11);
    CHECK(f.total_queries() == 0);
    f.query(GoodSet::of(5, {0, 1}));
    f.query(GoodSet::of(5, {0, 1}));
    f.query(GoodSet::of(5, {2, 4}));
    CHECK(f.total_queries() == 3);
    CHECK(f.distinct_queries() == 2);
    CHECK_THROWS_AS(f.query(GoodSet::of(5, {0, 1, 2})), usage_error);
}

TEST_CASE("is_local_max: constant scores make every vertex a local maximum") {
    const KneserGraph g(5, 2);
    const ScoreOracle f = ScoreOracle::constant(5, 2, 7);
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(is_local_max(g, f, v));
}

TEST_CASE("is_local_max: an indicator peak is a local max exactly at and away from the peak") {
    const KneserGraph g(5, 2);
    const GoodSet peak = GoodSet::of(5, {3, 4});
    const ScoreOracle f = ScoreOracle::indicator(5, 2, peak);
    const int peak_idx = g.index_of(peak);
    for (int v = 0; v < g.vertex_count(); ++v) {
        const bool expected = v == peak_idx || !g.adjacent(v, peak_idx);
        CHECK(is_local_max(g, f, v) == expected);
    }
}

TEST_CASE("reduction valuation: piecewise values at k = 2") {
    auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::constant(5, 2, 0));
    const Valuation v = build_reduction_valuation(2, oracle);
    CHECK(v.value(GoodSet::of(5, {1})) == Rational(2));          // 2|S| below k
    CHECK(v.value(GoodSet::of(5, {0, 1, 2})) == Rational(4));    // 2k above k
    CHECK(v.value(GoodSet::of(5, {0, 1})) == Rational(7, 2));    // 2k - 1/(2+0)
    CHECK(v.value(GoodSet::empty_set(5)).is_zero());
}

TEST_CASE("reduction valuation: the perturbation sits in (-1,0) and tracks f strictly") {
    auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(5, 2, 99, 50));
    const Valuation v = build_reduction_valuation(2, oracle);
    const KneserGraph g(5, 2);
    for (int a = 0; a < g.vertex_count(); ++a) {
        const Rational delta = v.value(g.vertex(a)) - Rational(4);
        CHECK(delta > Rational(-1));
        CHECK(delta < Rational(0));
        for (int b = 0; b < g.vertex_count(); ++b) {
            const long long fa = oracle->query_by_index(a);
            const long long fb = oracle->query_by_index(b);
            if (fa < fb) CHECK(v.value(g.vertex(a)) < v.value(g.vertex(b)));
        }
    }
}

TEST_CASE("every size-k query to the reduction valuation forwards one oracle query") {
    auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(5, 2, 5));
    const Valuation v = build_reduction_valuation(2, oracle);
    v.value(GoodSet::of(5, {0, 1}));
    v.value(GoodSet::of(5, {0, 1}));
    v.value(GoodSet::of(5, {0, 1, 2}));  // size 3: no forward
    v.value(GoodSet::of(5, {0}));        // size 1: no forward
    CHECK(oracle->total_queries() == 2);
    CHECK(oracle->distinct_queries() == 1);
}

TEST_CASE("correspondence: constant scores make exactly the 20 balanced splits EFX") {
    auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::constant(5, 2, 3));
    CHECK(verify_correspondence(2, oracle));
    const Valuation v = build_reduction_valuation(2, oracle);
    int efx_count = 0;
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        const GoodSet s = GoodSet::from_mask(5, mask);
        const Allocation a = Allocation::from_bundles({s.complement(), s});
        if (is_efx(a, {v, v})) ++efx_count;
    }
    CHECK(efx_count == 20);
}

TEST_CASE("correspondence: a peak at {3,4} makes ({0,1,2},{3,4}) EFX") {
    auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::indicator(5, 2, GoodSet::of(5, {3, 4})));
    const Valuation v = build_reduction_valuation(2, oracle);
    CHECK(is_efx(Allocation::of(5, {{0, 1, 2}, {3, 4}}), {v, v}));
    CHECK(verify_correspondence(2, oracle));
}

TEST_CASE("correspondence holds for random oracles at k = 2 and k = 3") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(5, 2, seed));
        CHECK(verify_correspondence(2, oracle));
    }
    auto big = std::make_shared<ScoreOracle>(ScoreOracle::random(7, 3, 1));
    CHECK(verify_correspondence(3, big));
}

TEST_CASE("generic leximin++ solve on the reduction instance touches f only at size k") {
    auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(5, 2, 17));
    const Valuation v = build_reduction_valuation(2, oracle);
    const Allocation a = leximin_solve({v, v}, ComparatorKind::leximin_plus_plus);
    CHECK(is_efx(a, {v, v}));
    CHECK(oracle->distinct_queries() <= binomial_u64(5, 2));
}

TEST_CASE("boundary: full set, empty set, and a Petersen singleton") {
    const KneserGraph g(5, 2);
    std::vector<int> all(10);
    for (int i = 0; i < 10; ++i) all[i] = i;
    CHECK(boundary(g, all).empty());
    CHECK(boundary(g, {}).empty());
    const std::vector<int> one{g.index_of(GoodSet::of(5, {0, 1}))};
    CHECK(boundary(g, one).size() == 3);
}

TEST_CASE("boundary bound on the Petersen graph: spot values and every r") {
    const KneserGraph g(5, 2);
    const BoundaryBoundResult r1 = verify_boundary_bound(g, 1);
    CHECK(r1.exhaustive);
    CHECK(r1.mu == 3);
    CHECK(r1.beta == Rational(-7));
    CHECK(r1.holds);
    const BoundaryBoundResult r4 = verify_boundary_bound(g, 4);
    CHECK(r4.beta == Rational(2));
    CHECK(r4.mu >= 2);
    CHECK(r4.holds);
    const BoundaryBoundResult r10 = verify_boundary_bound(g, 10);
    CHECK(r10.mu == 0);
    CHECK(r10.beta < Rational(0));
    CHECK(r10.holds);
    for (int r = 1; r <= 10; ++r) CHECK(verify_boundary_bound(g, r).holds);
}

TEST_CASE("boundary bound: larger graphs demand a sample count and flag non-exhaustive") {
    const KneserGraph g(7, 3);  // 35 vertices
    CHECK_THROWS_AS(verify_boundary_bound(g, 3), capacity_error);
    const BoundaryBoundResult sampled = verify_boundary_bound(g, 3, 50, 1);
    CHECK_FALSE(sampled.exhaustive);
}

TEST_CASE("beta monotonicity: exact values at k = 2 and larger k") {
    // beta over r = 1..4 at k = 2 is (-7, 0, 5/3, 2): non-decreasing.
    const KneserGraph petersen(5, 2);
    CHECK(verify_boundary_bound(petersen, 2).beta == Rational(0));
    CHECK(verify_boundary_bound(petersen, 3).beta == Rational(5, 3));
    CHECK(verify_beta_monotone(2));
    CHECK(verify_beta_monotone(3));
    CHECK(verify_beta_monotone(10));
    CHECK(verify_beta_monotone(20));  // closed-form path
}

TEST_CASE("closed-form query lower bound values") {
    CHECK(lower_bound_value(2) == Rational(4, 5));
    CHECK(lower_bound_value(3) == Rational(15, 7));
    CHECK(lower_bound_value(1) == Rational(1, 3));
}

TEST_CASE("odd-graph diameters up to k = 3 (triangle, Petersen, K(7,3))") {
    CHECK(verify_diameter(1));
    CHECK(verify_diameter(2));
    CHECK(verify_diameter(3));
    CHECK(odd_graph_diameter(2) == 2);
}

TEST_CASE("cross-intersecting families: the product bound is met exactly by the stars") {
    const CrossIntersectResult res = verify_cross_intersecting(5, 2);
    CHECK(res.holds);
    CHECK(res.max_product == 16);
    CHECK(res.bound == 16);
    CHECK(res.tight);
    CHECK_THROWS_AS(verify_cross_intersecting(7, 3), capacity_error);
}

TEST_CASE("local search: constant scores stop at the start after 1 + degree queries") {
    const KneserGraph g(5, 2);
    const ScoreOracle f = ScoreOracle::constant(5, 2, 1);
    const LocalSearchResult res = run_local_search(g, f);
    CHECK(res.local_max == 0);
    CHECK(res.steps == 0);
    CHECK(res.total_queries == 1 + static_cast<std::uint64_t>(g.degree(0)));
}

TEST_CASE("local search: distance-decreasing scores climb to the target") {
    const KneserGraph g(5, 2);
    const int target = g.index_of(GoodSet::of(5, {1, 3}));
    const std::vector<int> dist = bfs_distances(g, target);
    std::vector<long long> scores;
    scores.reserve(dist.size());
    for (int d : dist) scores.push_back(10 - d);
    const ScoreOracle f(5, 2, std::move(scores));
    const LocalSearchResult res = run_local_search(g, f);
    CHECK(res.local_max == target);
}

TEST_CASE("local search: random scores end at a genuine local maximum") {
    const KneserGraph g(5, 2);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const ScoreOracle f = ScoreOracle::random(5, 2, seed);
        const LocalSearchResult res = run_local_search(g, f);
        CHECK(is_local_max(g, f, res.local_max));
    }
}

TEST_CASE("reduction valuation class holds at k = 3 as well") {
    auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(7, 3, 2));
    const ClassReport rep = check_class(build_reduction_valuation(3, oracle));
    CHECK(rep.monotone);
    CHECK(rep.submodular);
    CHECK(rep.subadditive);
}
