#include "fairdiv/kneser.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "fairdiv/allocation.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

std::uint64_t binomial_u64(int n, int k) {
    if (n < 0 || k < 0) throw usage_error("binomial: negative arguments");
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (result > UINT64_MAX / num) throw capacity_error("binomial: overflow");
        result = result * num / static_cast<std::uint64_t>(i);
    }
    return result;
}

namespace {

// Size-k subsets of [n] in ascending bitmask order, which is exactly colex
// order on the subsets.
std::vector<GoodSet> colex_vertices(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw usage_error("Kneser: need 1 <= k <= n");
    if (n > 24) throw capacity_error("Kneser: universe too large to enumerate vertices");
    std::vector<GoodSet> out;
    out.reserve(binomial_u64(n, k));
    const std::uint64_t states = 1ULL << n;
    for (std::uint64_t mask = 0; mask < states; ++mask) {
        if (static_cast<int>(std::popcount(mask)) == k) out.push_back(GoodSet::from_mask(n, mask));
    }
    return out;
}

int rank_of(const std::vector<GoodSet>& vertices, const GoodSet& s) {
    const auto it = std::lower_bound(vertices.begin(), vertices.end(), s);
    if (it == vertices.end() || *it != s) return -1;
    return static_cast<int>(it - vertices.begin());
}

}  // namespace

KneserGraph::KneserGraph(int n, int k) : n_(n), k_(k), vertices_(colex_vertices(n, k)) {
    adj_.resize(vertices_.size());
    for (std::size_t a = 0; a < vertices_.size(); ++a) {
        for (std::size_t b = a + 1; b < vertices_.size(); ++b) {
            if (vertices_[a].disjoint_from(vertices_[b])) {
                adj_[a].push_back(static_cast<int>(b));
                adj_[b].push_back(static_cast<int>(a));
            }
        }
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

int KneserGraph::index_of(const GoodSet& s) const {
    if (s.universe_size() != n_ || s.size() != k_) {
        throw usage_error("Kneser: " + s.to_string() + " is not a size-" + std::to_string(k_) +
                          " subset of [" + std::to_string(n_) + "]");
    }
    const int idx = rank_of(vertices_, s);
    if (idx < 0) throw internal_error("Kneser: vertex lookup failed");
    return idx;
}

bool KneserGraph::adjacent(int a, int b) const {
    return vertices_[static_cast<std::size_t>(a)].disjoint_from(vertices_[static_cast<std::size_t>(b)]);
}

std::vector<int> bfs_distances(const KneserGraph& g, int source) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::deque<int> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

ScoreOracle::ScoreOracle(int n, int k, std::vector<long long> scores_by_colex_rank)
    : n_(n),
      k_(k),
      vertices_(colex_vertices(n, k)),
      scores_(std::move(scores_by_colex_rank)),
      counters_(std::make_unique<Counters>()) {
    if (scores_.size() != vertices_.size()) {
        throw usage_error("ScoreOracle: expected " + std::to_string(vertices_.size()) + " scores");
    }
    for (long long s : scores_) {
        if (s < 0) throw usage_error("ScoreOracle: scores must be non-negative");
    }
}

ScoreOracle ScoreOracle::constant(int n, int k, long long score) {
    return ScoreOracle(n, k, std::vector<long long>(binomial_u64(n, k), score));
}

ScoreOracle ScoreOracle::indicator(int n, int k, const GoodSet& peak) {
    ScoreOracle oracle = constant(n, k, 0);
    const int idx = rank_of(oracle.vertices_, peak);
    if (idx < 0) throw usage_error("ScoreOracle: peak is not a vertex");
    oracle.scores_[static_cast<std::size_t>(idx)] = 1;
    return oracle;
}

ScoreOracle ScoreOracle::random(int n, int k, std::uint64_t seed, long long max_score) {
    if (max_score < 0) throw usage_error("ScoreOracle: negative max score");
    std::mt19937_64 rng(seed ^ 0xca11ab1eca11ab1eULL);
    std::vector<long long> scores(binomial_u64(n, k));
    for (auto& s : scores) s = static_cast<long long>(rng() % static_cast<std::uint64_t>(max_score + 1));
    return ScoreOracle(n, k, std::move(scores));
}

long long ScoreOracle::query(const GoodSet& s) const {
    if (s.universe_size() != n_ || s.size() != k_) {
        throw usage_error("ScoreOracle: " + s.to_string() + " is not a size-" + std::to_string(k_) +
                          " subset of [" + std::to_string(n_) + "]");
    }
    const int idx = rank_of(vertices_, s);
    if (idx < 0) throw internal_error("ScoreOracle: rank lookup failed");
    {
        std::lock_guard<std::mutex> lock(counters_->mu);
        ++counters_->total;
        counters_->seen.insert(s);
    }
    return scores_[static_cast<std::size_t>(idx)];
}

long long ScoreOracle::query_by_index(int vertex_index) const {
    return query(vertices_[static_cast<std::size_t>(vertex_index)]);
}

std::uint64_t ScoreOracle::total_queries() const {
    std::lock_guard<std::mutex> lock(counters_->mu);
    return counters_->total;
}

std::uint64_t ScoreOracle::distinct_queries() const {
    std::lock_guard<std::mutex> lock(counters_->mu);
    return counters_->seen.size();
}

bool is_local_max(const KneserGraph& g, const ScoreOracle& f, int vertex_index) {
    const long long own = f.query(g.vertex(vertex_index));
    bool ok = true;
    for (int nb : g.neighbors(vertex_index)) {
        if (f.query(g.vertex(nb)) > own) ok = false;  // keep querying: count is deterministic
    }
    return ok;
}

Valuation build_reduction_valuation(int k, std::shared_ptr<ScoreOracle> oracle) {
    if (!oracle) throw usage_error("build_reduction_valuation: null oracle");
    if (oracle->n() != 2 * k + 1 || oracle->k() != k) {
        throw usage_error("build_reduction_valuation: oracle must cover the size-k subsets of [2k+1]");
    }
    return Valuation::kneser_reduction(
        k, [oracle = std::move(oracle)](const GoodSet& s) { return oracle->query(s); });
}

bool verify_correspondence(int k, const std::shared_ptr<ScoreOracle>& oracle) {
    if (k < 1 || k > 3) throw capacity_error("verify_correspondence: exhaustive check supports k <= 3");
    const int m = 2 * k + 1;
    const KneserGraph graph(m, k);
    const Valuation v = build_reduction_valuation(k, oracle);
    const std::vector<Valuation> players{v, v};

    std::vector<bool> local_max(static_cast<std::size_t>(graph.vertex_count()));
    for (int idx = 0; idx < graph.vertex_count(); ++idx) {
        local_max[static_cast<std::size_t>(idx)] = is_local_max(graph, *oracle, idx);
    }

    const std::uint64_t states = 1ULL << m;
    for (std::uint64_t mask = 0; mask < states; ++mask) {
        const GoodSet second = GoodSet::from_mask(m, mask);
        const GoodSet first = second.complement();
        const Allocation alloc = Allocation::from_bundles({first, second});
        const bool efx = is_efx(alloc, players);

        const int s1 = first.size();
        const int s2 = second.size();
        bool expected = false;
        if (std::min(s1, s2) == k && std::max(s1, s2) == k + 1) {
            const GoodSet& small = s1 == k ? first : second;
            expected = local_max[static_cast<std::size_t>(graph.index_of(small))];
        }
        if (efx != expected) return false;
    }
    return true;
}

std::vector<int> boundary(const KneserGraph& g, const std::vector<int>& s) {
    std::vector<bool> in_s(static_cast<std::size_t>(g.vertex_count()), false);
    for (int v : s) {
        if (v < 0 || v >= g.vertex_count()) throw usage_error("boundary: bad vertex index");
        in_s[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> out;
    for (int a = 0; a < g.vertex_count(); ++a) {
        if (in_s[static_cast<std::size_t>(a)]) continue;
        for (int b : g.neighbors(a)) {
            if (in_s[static_cast<std::size_t>(b)]) {
                out.push_back(a);
                break;
            }
        }
    }
    return out;
}

namespace {

Rational beta_general(int n, int k, std::uint64_t r) {
    const Rational vertices = Rational::binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    const Rational col = Rational::binomial(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(k - 1));
    Rational rr(static_cast<long long>(r));
    return vertices - (col * col) / rr - rr;
}

}  // namespace

BoundaryBoundResult verify_boundary_bound(const KneserGraph& g, int r,
                                          std::optional<std::uint64_t> samples, std::uint64_t seed) {
    const int vcount = g.vertex_count();
    if (r < 1 || r > vcount) throw usage_error("verify_boundary_bound: r out of range");

    BoundaryBoundResult res;
    res.beta = beta_general(g.n(), g.k(), static_cast<std::uint64_t>(r));

    bool have_mu = false;
    auto consider = [&](const std::vector<int>& subset) {
        const std::uint64_t b = boundary(g, subset).size();
        if (!have_mu || b < res.mu) {
            res.mu = b;
            have_mu = true;
        }
    };

    if (vcount <= 12) {
        res.exhaustive = true;
        std::vector<int> subset(static_cast<std::size_t>(r));
        // All size-r vertex subsets via the revolving-door of masks.
        const std::uint64_t states = 1ULL << vcount;
        for (std::uint64_t mask = 0; mask < states; ++mask) {
            if (static_cast<int>(std::popcount(mask)) != r) continue;
            subset.clear();
            for (int v = 0; v < vcount; ++v) {
                if (mask & (1ULL << v)) subset.push_back(v);
            }
            consider(subset);
        }
    } else {
        if (!samples) {
            throw capacity_error("verify_boundary_bound: graph too large for exhaustive scan; "
                                 "pass a sample count for a non-exhaustive check");
        }
        res.exhaustive = false;
        std::mt19937_64 rng(seed ^ 0xb0a2d2b0a2d2ULL);
        std::vector<int> all(static_cast<std::size_t>(vcount));
        for (int v = 0; v < vcount; ++v) all[static_cast<std::size_t>(v)] = v;
        for (std::uint64_t t = 0; t < *samples; ++t) {
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<int> subset(all.begin(), all.begin() + r);
            consider(subset);
        }
    }

    res.holds = Rational(static_cast<long long>(res.mu)) >= res.beta;
    return res;
}

bool verify_beta_monotone(int k) {
    if (k < 1 || k > 20) throw usage_error("verify_beta_monotone: need 1 <= k <= 20");
    const std::uint64_t r_max = binomial_u64(2 * k, k - 1);
    const int n = 2 * k + 1;

    if (r_max <= 3'000'000) {
        Rational prev = beta_general(n, k, 1);
        for (std::uint64_t r = 2; r <= r_max; ++r) {
            Rational cur = beta_general(n, k, r);
            if (prev > cur) return false;
            prev = std::move(cur);
        }
        return true;
    }

    // beta(r) - beta(r-1) = C(2k,k-1)^2 / (r(r-1)) - 1, so the difference is
    // non-negative exactly when r(r-1) <= C(2k,k-1)^2. The left side is
    // largest at r = r_max, so one exact check covers the whole range.
    const Rational c = Rational::binomial(static_cast<unsigned long>(2 * k),
                                          static_cast<unsigned long>(k - 1));
    const Rational rm(static_cast<long long>(r_max));
    return rm * (rm - Rational(1)) <= c * c;
}

Rational lower_bound_value(int k) {
    if (k < 1) throw usage_error("lower_bound_value: need k >= 1");
    return Rational::binomial(static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k - 1)) /
           Rational(2 * k + 1);
}

int odd_graph_diameter(int k) {
    if (k < 1 || k > 6) throw capacity_error("odd_graph_diameter: breadth-first capacity is k <= 6");
    const KneserGraph g(2 * k + 1, k);
    int diameter = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (int d : bfs_distances(g, v)) {
            if (d < 0) throw internal_error("odd_graph_diameter: graph is disconnected");
            diameter = std::max(diameter, d);
        }
    }
    return diameter;
}

bool verify_diameter(int k) {
    return odd_graph_diameter(k) == k;
}

CrossIntersectResult verify_cross_intersecting(int n, int k) {
    const std::uint64_t vcount64 = binomial_u64(n, k);
    if (vcount64 > 12) {
        throw capacity_error("verify_cross_intersecting: 2^C(n,k) family pairs only enumerable for C(n,k) <= 12");
    }
    const KneserGraph g(n, k);
    const int vcount = g.vertex_count();

    CrossIntersectResult res;
    const std::uint64_t col = binomial_u64(n - 1, k - 1);
    res.bound = col * col;

    // intersectors[v] = vertices sharing an element with v (non-neighbors,
    // including v itself).
    std::vector<std::uint64_t> intersectors(static_cast<std::size_t>(vcount), 0);
    for (int a = 0; a < vcount; ++a) {
        for (int b = 0; b < vcount; ++b) {
            if (!g.vertex(a).disjoint_from(g.vertex(b))) {
                intersectors[static_cast<std::size_t>(a)] |= 1ULL << b;
            }
        }
    }

    // For a fixed X, the largest valid partner family is exactly the set of
    // vertices intersecting every member of X, so scanning X alone covers
    // every cross-intersecting pair.
    const std::uint64_t families = 1ULL << vcount;
    const std::uint64_t all = families - 1;
    for (std::uint64_t x = 0; x < families; ++x) {
        std::uint64_t allowed = all;
        std::uint64_t rest = x;
        while (rest != 0) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            allowed &= intersectors[static_cast<std::size_t>(v)];
        }
        const std::uint64_t product = static_cast<std::uint64_t>(std::popcount(x)) *
                                      static_cast<std::uint64_t>(std::popcount(allowed));
        res.max_product = std::max(res.max_product, product);
    }
    res.holds = res.max_product <= res.bound;

    // Tightness: both families = all size-k subsets containing element 0.
    std::uint64_t star = 0;
    for (int v = 0; v < vcount; ++v) {
        if (g.vertex(v).contains(0)) star |= 1ULL << v;
    }
    bool star_cross = true;
    for (int a = 0; a < vcount && star_cross; ++a) {
        if (!(star & (1ULL << a))) continue;
        for (int b = 0; b < vcount; ++b) {
            if ((star & (1ULL << b)) && g.vertex(a).disjoint_from(g.vertex(b))) {
                star_cross = false;
                break;
            }
        }
    }
    const std::uint64_t star_size = static_cast<std::uint64_t>(std::popcount(star));
    res.tight = star_cross && star_size * star_size == res.bound;
    return res;
}

LocalSearchResult run_local_search(const KneserGraph& g, const ScoreOracle& f, std::optional<int> start) {
    int current = start.value_or(0);
    if (current < 0 || current >= g.vertex_count()) throw usage_error("run_local_search: bad start vertex");

    LocalSearchResult res;
    long long current_score = f.query(g.vertex(current));
    while (true) {
        int best = -1;
        long long best_score = current_score;
        for (int nb : g.neighbors(current)) {
            const long long s = f.query(g.vertex(nb));
            if (s > best_score) {  // strictly improving; ties keep the earlier
                best = nb;
                best_score = s;
            }
        }
        if (best < 0) break;
        current = best;
        current_score = best_score;
        ++res.steps;
    }
    res.local_max = current;
    res.total_queries = f.total_queries();
    res.distinct_queries = f.distinct_queries();
    return res;
}

}  // namespace fairdiv
