#include "fairdiv/valuation.hpp"

#include <utility>

namespace fairdiv {

namespace {

void require_kind(Valuation::Kind have, Valuation::Kind want, const char* what) {
    if (have != want) throw usage_error(std::string("Valuation: ") + what + " on wrong kind");
}

}  // namespace

Valuation Valuation::additive(std::vector<Rational> per_good) {
    if (per_good.size() > static_cast<std::size_t>(GoodSet::kMaxGoods)) {
        throw usage_error("Valuation: too many goods for additive valuation");
    }
    for (const Rational& r : per_good) {
        if (r.is_negative()) throw usage_error("Valuation: negative per-good value");
    }
    auto data = std::make_shared<Data>();
    data->kind = Kind::additive;
    data->m = static_cast<int>(per_good.size());
    data->values = std::move(per_good);
    return Valuation(std::move(data));
}

Valuation Valuation::table(int m, std::vector<Rational> by_mask, bool enforce_monotone) {
    if (m < 0 || m > kMaxTableGoods) {
        throw usage_error("Valuation: table universe must have 0 <= m <= " +
                          std::to_string(kMaxTableGoods) + " goods, got " + std::to_string(m));
    }
    const std::size_t want = 1ULL << m;
    if (by_mask.size() != want) {
        throw usage_error("Valuation: table needs exactly 2^m = " + std::to_string(want) +
                          " entries, got " + std::to_string(by_mask.size()));
    }
    if (!by_mask[0].is_zero()) throw usage_error("Valuation: table violates v({}) = 0");
    for (const Rational& r : by_mask) {
        if (r.is_negative()) throw usage_error("Valuation: negative table value");
    }
    if (enforce_monotone) {
        for (std::uint64_t mask = 0; mask < want; ++mask) {
            for (int g = 0; g < m; ++g) {
                if (mask & (1ULL << g)) continue;
                if (by_mask[mask | (1ULL << g)] < by_mask[mask]) {
                    throw usage_error("Valuation: table not monotone at mask " + std::to_string(mask) +
                                      " plus good " + std::to_string(g));
                }
            }
        }
    }
    auto data = std::make_shared<Data>();
    data->kind = Kind::table;
    data->m = m;
    data->values = std::move(by_mask);
    return Valuation(std::move(data));
}

Valuation Valuation::kneser_reduction(int k, ScoreFn score) {
    if (k < 1) throw usage_error("Valuation: kneser reduction needs k >= 1");
    if (!score) throw usage_error("Valuation: kneser reduction needs a score oracle");
    auto data = std::make_shared<Data>();
    data->kind = Kind::kneser;
    data->m = 2 * k + 1;
    data->k = k;
    data->score = std::move(score);
    return Valuation(std::move(data));
}

Rational Valuation::value(const GoodSet& s) const {
    if (s.universe_size() != data_->m) {
        throw usage_error("Valuation: subset universe " + std::to_string(s.universe_size()) +
                          " does not match valuation universe " + std::to_string(data_->m));
    }
    switch (data_->kind) {
        case Kind::additive: {
            Rational sum;
            s.for_each([&](int g) { sum += data_->values[static_cast<std::size_t>(g)]; });
            return sum;
        }
        case Kind::table:
            return data_->values[s.low_mask()];
        case Kind::kneser: {
            const int sz = s.size();
            const int k = data_->k;
            if (sz < k) return Rational(2 * sz);
            if (sz > k) return Rational(2 * k);
            const long long f = data_->score(s);
            if (f < 0) throw usage_error("Valuation: kneser score oracle returned a negative score");
            // 2k + delta(S) with delta(S) = -1/(2 + f(S)): exact, in (-1, 0),
            // and strictly increasing in f.
            return Rational(2 * k) - Rational(1) / Rational(2 + f);
        }
    }
    throw internal_error("Valuation: unknown kind");
}

Rational Valuation::marginal(const GoodSet& s, int good) const {
    if (s.contains(good)) {
        throw usage_error("Valuation: marginal of good " + std::to_string(good) +
                          " already in the bundle");
    }
    return value(s.plus(good)) - value(s);
}

const std::vector<Rational>& Valuation::additive_values() const {
    require_kind(data_->kind, Kind::additive, "additive_values()");
    return data_->values;
}

const std::vector<Rational>& Valuation::table_values() const {
    require_kind(data_->kind, Kind::table, "table_values()");
    return data_->values;
}

int Valuation::kneser_k() const {
    require_kind(data_->kind, Kind::kneser, "kneser_k()");
    return data_->k;
}

bool Valuation::operator==(const Valuation& o) const {
    if (data_ == o.data_) return true;
    if (data_->kind != o.data_->kind || data_->m != o.data_->m) return false;
    switch (data_->kind) {
        case Kind::additive:
        case Kind::table:
            return data_->values == o.data_->values;
        case Kind::kneser:
            return false;  // distinct oracle bindings are distinct valuations
    }
    return false;
}

namespace {

GoodSet set_from(int m, std::uint64_t mask) {
    return GoodSet::from_mask(m, mask);
}

}  // namespace

ClassReport check_class(const Valuation& v, int monotone_cap, int pairwise_cap) {
    const int m = v.goods_count();
    ClassReport rep;

    if (m > monotone_cap) {
        throw capacity_error("check_class: universe size " + std::to_string(m) +
                             " exceeds monotone/nonzero-marginal cap " + std::to_string(monotone_cap));
    }
    const std::uint64_t states = 1ULL << m;

    // Monotone and nonzero marginal utility: one pass over (S, g not in S).
    for (std::uint64_t mask = 0; mask < states; ++mask) {
        const GoodSet s = set_from(m, mask);
        const Rational base = v.value(s);
        for (int g = 0; g < m; ++g) {
            if (mask & (1ULL << g)) continue;
            const Rational grown = v.value(s.plus(g));
            if (grown < base) {
                rep.monotone = false;
                if (!rep.monotone_witness) rep.monotone_witness = {s, g};
            }
            if (grown == base && rep.nonzero_marginal_utility) {
                rep.nonzero_marginal_utility = false;
                rep.nmu_witness = {s, g};
            }
        }
        if (!rep.monotone && !rep.nonzero_marginal_utility) break;
    }

    if (m > pairwise_cap) {
        throw capacity_error("check_class: universe size " + std::to_string(m) +
                             " exceeds submodular/subadditive cap " + std::to_string(pairwise_cap));
    }

    // Submodularity via the local characterization: for all S and x != y
    // outside S, marginal(S + y, x) <= marginal(S, x). A local violation at
    // (S, y, x) is a violation of the defining inequality with T = S + y.
    for (std::uint64_t mask = 0; mask < states && rep.submodular; ++mask) {
        const GoodSet s = set_from(m, mask);
        for (int x = 0; x < m && rep.submodular; ++x) {
            if (mask & (1ULL << x)) continue;
            const Rational small = v.marginal(s, x);
            for (int y = 0; y < m; ++y) {
                if (y == x || (mask & (1ULL << y))) continue;
                const GoodSet t = s.plus(y);
                if (v.marginal(t, x) > small) {
                    rep.submodular = false;
                    rep.submodular_witness = {s, t, x};
                    break;
                }
            }
        }
    }

    // Subadditivity. For monotone v it is enough to check disjoint pairs
    // (v(S|T) = v(S | (T\S)) <= v(S) + v(T\S) <= v(S) + v(T)); otherwise
    // scan every pair.
    if (rep.monotone) {
        for (std::uint64_t mask = 0; mask < states && rep.subadditive; ++mask) {
            const GoodSet s = set_from(m, mask);
            const Rational vs = v.value(s);
            const std::uint64_t rest = (states - 1) & ~mask;
            // All submasks of the complement, including the empty set.
            std::uint64_t sub = rest;
            while (true) {
                const GoodSet t = set_from(m, sub);
                if (vs + v.value(t) < v.value(s.union_with(t))) {
                    rep.subadditive = false;
                    rep.subadditive_witness = {s, t};
                    break;
                }
                if (sub == 0) break;
                sub = (sub - 1) & rest;
            }
        }
    } else {
        for (std::uint64_t a = 0; a < states && rep.subadditive; ++a) {
            const GoodSet s = set_from(m, a);
            const Rational vs = v.value(s);
            for (std::uint64_t b = a; b < states; ++b) {
                const GoodSet t = set_from(m, b);
                if (vs + v.value(t) < v.value(s.union_with(t))) {
                    rep.subadditive = false;
                    rep.subadditive_witness = {s, t};
                    break;
                }
            }
        }
    }

    return rep;
}

Rational QueryCountedValuation::value(const GoodSet& s) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        ++total_;
        seen_.insert(s);
    }
    return inner_.value(s);
}

std::uint64_t QueryCountedValuation::total_queries() const {
    std::lock_guard<std::mutex> lock(mu_);
    return total_;
}

std::uint64_t QueryCountedValuation::distinct_queries() const {
    std::lock_guard<std::mutex> lock(mu_);
    return seen_.size();
}

}  // namespace fairdiv
