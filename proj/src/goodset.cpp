#include "fairdiv/goodset.hpp"

#include <bit>

namespace fairdiv {

namespace {

void check_universe_size(int m) {
    if (m < 0 || m > GoodSet::kMaxGoods) {
        throw usage_error("GoodSet: universe size " + std::to_string(m) + " not in [0, " +
                          std::to_string(GoodSet::kMaxGoods) + "]");
    }
}

}  // namespace

GoodSet GoodSet::empty_set(int m) {
    check_universe_size(m);
    return GoodSet(m, 0, 0);
}

GoodSet GoodSet::full_set(int m) {
    check_universe_size(m);
    GoodSet s = empty_set(m);
    s.lo_ = m >= 64 ? ~0ULL : (m == 0 ? 0 : (~0ULL >> (64 - m)));
    s.hi_ = m <= 64 ? 0 : (~0ULL >> (128 - m));
    return s;
}

GoodSet GoodSet::single(int m, int good) {
    return empty_set(m).plus(good);
}

GoodSet GoodSet::of(int m, std::initializer_list<int> goods) {
    GoodSet s = empty_set(m);
    for (int g : goods) s = s.plus(g);
    return s;
}

GoodSet GoodSet::of(int m, const std::vector<int>& goods) {
    GoodSet s = empty_set(m);
    for (int g : goods) s = s.plus(g);
    return s;
}

GoodSet GoodSet::from_mask(int m, std::uint64_t mask) {
    check_universe_size(m);
    if (m < 64) {
        const std::uint64_t allowed = m == 0 ? 0 : (~0ULL >> (64 - m));
        if ((mask & ~allowed) != 0) {
            throw usage_error("GoodSet: mask references goods outside universe of size " +
                              std::to_string(m));
        }
    }
    return GoodSet(m, mask, 0);
}

GoodSet GoodSet::plus(int good) const {
    check_index(good);
    GoodSet s = *this;
    if (good < 64) s.lo_ |= 1ULL << good;
    else s.hi_ |= 1ULL << (good - 64);
    return s;
}

GoodSet GoodSet::minus(int good) const {
    check_index(good);
    GoodSet s = *this;
    if (good < 64) s.lo_ &= ~(1ULL << good);
    else s.hi_ &= ~(1ULL << (good - 64));
    return s;
}

GoodSet GoodSet::complement() const {
    return full_set(m_).difference(*this);
}

std::vector<int> GoodSet::goods() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int g) { out.push_back(g); });
    return out;
}

int GoodSet::lowest() const {
    if (empty()) throw usage_error("GoodSet: lowest() on empty set");
    return lo_ != 0 ? std::countr_zero(lo_) : 64 + std::countr_zero(hi_);
}

std::uint64_t GoodSet::low_mask() const {
    if (m_ > 64) throw usage_error("GoodSet: low_mask() requires universe size <= 64");
    return lo_;
}

std::string GoodSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](int g) {
        if (!first) out += ",";
        out += std::to_string(g);
        first = false;
    });
    out += "}";
    return out;
}

}  // namespace fairdiv
