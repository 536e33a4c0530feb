#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fairdiv/goodset.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// Score callback used by the Kneser-reduction valuation kind: maps a size-k
/// subset to a non-negative integer score. Every call counts as one oracle
/// query on the underlying score oracle.
using ScoreFn = std::function<long long(const GoodSet&)>;

/// A normalized monotone valuation oracle v: 2^[m] -> Q>=0.
///
/// Three concrete flavors:
///   - additive: v(S) = sum of per-good values,
///   - table:    one stored value per subset (m <= 20),
///   - kneser:   the local-search reduction over m = 2k+1 goods,
///               v(S) = 2|S| for |S| < k, 2k for |S| > k, and
///               v(S) = 2k - 1/(2 + f(S)) for |S| = k.
///
/// Immutable after construction and safe to share across threads.
class Valuation {
public:
    enum class Kind { additive, table, kneser };

    static constexpr int kMaxTableGoods = 20;

    /// Per-good values must be non-negative; m = per_good.size().
    static Valuation additive(std::vector<Rational> per_good);

    /// by_mask[mask] is the value of the subset with that bitmask; must have
    /// size 2^m, by_mask[0] == 0, and all entries non-negative. Monotonicity
    /// is checked exhaustively unless enforce_monotone is false (only
    /// deliberately malformed fixtures should opt out).
    static Valuation table(int m, std::vector<Rational> by_mask, bool enforce_monotone = true);

    /// The piecewise reduction valuation; see kneserlab for construction
    /// from a counted score oracle.
    static Valuation kneser_reduction(int k, ScoreFn score);

    Kind kind() const { return data_->kind; }
    int goods_count() const { return data_->m; }

    Rational value(const GoodSet& s) const;
    /// v(S + g) - v(S); requires g not in S.
    Rational marginal(const GoodSet& s, int good) const;
    Rational total() const { return value(GoodSet::full_set(goods_count())); }

    const std::vector<Rational>& additive_values() const;  // additive kind only
    const std::vector<Rational>& table_values() const;     // table kind only
    int kneser_k() const;                                  // kneser kind only

    /// Structural equality for additive/table kinds; kneser valuations are
    /// equal only when they share the same underlying oracle binding.
    bool operator==(const Valuation& o) const;
    bool operator!=(const Valuation& o) const { return !(*this == o); }

private:
    struct Data {
        Kind kind;
        int m = 0;
        std::vector<Rational> values;  // per-good (additive) or per-mask (table)
        int k = 0;                     // kneser
        ScoreFn score;                 // kneser
    };

    explicit Valuation(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// Result of an exhaustive valuation-class scan, with a witness for each
/// failed property.
struct ClassReport {
    bool monotone = true;
    bool submodular = true;
    bool subadditive = true;
    bool nonzero_marginal_utility = true;

    std::optional<std::pair<GoodSet, int>> monotone_witness;            // v(S+g) < v(S)
    std::optional<std::tuple<GoodSet, GoodSet, int>> submodular_witness;  // marginal(S,x) < marginal(T,x), S subset T
    std::optional<std::pair<GoodSet, GoodSet>> subadditive_witness;     // v(S)+v(T) < v(S|T)
    std::optional<std::pair<GoodSet, int>> nmu_witness;                 // marginal(S,g) == 0

    bool all() const { return monotone && submodular && subadditive && nonzero_marginal_utility; }
};

/// Exhaustively decides monotonicity, submodularity, subadditivity and
/// nonzero marginal utility. Scans 2^m states for the first and last, and a
/// pairwise lattice scan for the middle two, so the universe caps differ.
/// Exceeding a cap is a capacity_error: this function never samples.
ClassReport check_class(const Valuation& v, int monotone_cap = 20, int pairwise_cap = 14);

/// Wraps a valuation and counts value queries: total calls and distinct
/// queried subsets. Counters tolerate concurrent queries and are exact once
/// callers quiesce. Results are bit-identical to the inner valuation's.
class QueryCountedValuation {
public:
    explicit QueryCountedValuation(Valuation inner) : inner_(std::move(inner)) {}

    Rational value(const GoodSet& s) const;
    const Valuation& inner() const { return inner_; }

    std::uint64_t total_queries() const;
    std::uint64_t distinct_queries() const;

private:
    Valuation inner_;
    mutable std::mutex mu_;
    mutable std::uint64_t total_ = 0;
    mutable std::unordered_set<GoodSet, GoodSet::Hash> seen_;
};

}  // namespace fairdiv
