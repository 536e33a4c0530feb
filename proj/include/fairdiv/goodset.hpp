#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

/// A subset of the goods 0..m-1, stored as a bitmask together with its
/// universe size m. Set operations require matching universes; mixing
/// universes is a usage_error rather than a silent truncation.
class GoodSet {
public:
    static constexpr int kMaxGoods = 128;

    GoodSet() = default;  // empty set over the empty universe

    static GoodSet empty_set(int m);
    static GoodSet full_set(int m);
    static GoodSet single(int m, int good);
    static GoodSet of(int m, std::initializer_list<int> goods);
    static GoodSet of(int m, const std::vector<int>& goods);
    /// Builds from a raw mask over the low 64 goods (m <= 64).
    static GoodSet from_mask(int m, std::uint64_t mask);

    int universe_size() const { return m_; }
    int size() const { return std::popcount(lo_) + std::popcount(hi_); }
    bool empty() const { return lo_ == 0 && hi_ == 0; }
    bool is_full() const { return *this == full_set(m_); }

    bool contains(int good) const {
        check_index(good);
        return good < 64 ? (lo_ >> good) & 1u : (hi_ >> (good - 64)) & 1u;
    }

    GoodSet plus(int good) const;
    GoodSet minus(int good) const;
    GoodSet union_with(const GoodSet& o) const { check_universe(o); return GoodSet(m_, lo_ | o.lo_, hi_ | o.hi_); }
    GoodSet intersect(const GoodSet& o) const { check_universe(o); return GoodSet(m_, lo_ & o.lo_, hi_ & o.hi_); }
    GoodSet difference(const GoodSet& o) const { check_universe(o); return GoodSet(m_, lo_ & ~o.lo_, hi_ & ~o.hi_); }
    GoodSet complement() const;

    bool subset_of(const GoodSet& o) const { check_universe(o); return (lo_ & ~o.lo_) == 0 && (hi_ & ~o.hi_) == 0; }
    bool intersects(const GoodSet& o) const { check_universe(o); return (lo_ & o.lo_) != 0 || (hi_ & o.hi_) != 0; }
    bool disjoint_from(const GoodSet& o) const { return !intersects(o); }

    /// Good indices in ascending order.
    std::vector<int> goods() const;
    template <typename F>
    void for_each(F&& f) const {
        for (std::uint64_t w = lo_; w != 0; w &= w - 1) f(std::countr_zero(w));
        for (std::uint64_t w = hi_; w != 0; w &= w - 1) f(64 + std::countr_zero(w));
    }
    int lowest() const;  // usage_error when empty

    /// Raw mask of the low word; requires m <= 64 (used as table index).
    std::uint64_t low_mask() const;

    bool operator==(const GoodSet& o) const { return m_ == o.m_ && lo_ == o.lo_ && hi_ == o.hi_; }
    bool operator!=(const GoodSet& o) const { return !(*this == o); }
    // Mask order (ascending numeric), used for canonical tie-breaks and maps.
    bool operator<(const GoodSet& o) const {
        if (m_ != o.m_) return m_ < o.m_;
        if (hi_ != o.hi_) return hi_ < o.hi_;
        return lo_ < o.lo_;
    }

    std::string to_string() const;  // e.g. "{0,2,3}"

    struct Hash {
        std::size_t operator()(const GoodSet& s) const {
            std::uint64_t h = s.lo_ * 0x9e3779b97f4a7c15ULL;
            h ^= s.hi_ + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h ^ (static_cast<std::uint64_t>(s.m_) << 32));
        }
    };

private:
    GoodSet(int m, std::uint64_t lo, std::uint64_t hi) : m_(m), lo_(lo), hi_(hi) {}

    void check_index(int good) const {
        if (good < 0 || good >= m_) {
            throw usage_error("GoodSet: good index " + std::to_string(good) +
                              " outside universe of size " + std::to_string(m_));
        }
    }
    void check_universe(const GoodSet& o) const {
        if (m_ != o.m_) {
            throw usage_error("GoodSet: universe mismatch (" + std::to_string(m_) + " vs " +
                              std::to_string(o.m_) + ")");
        }
    }

    int m_ = 0;
    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = 0;
};

}  // namespace fairdiv
