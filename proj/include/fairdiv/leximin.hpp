#pragma once

#include <cstdint>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

enum class ComparatorKind { leximin, leximin_plus_plus };

/// Players sorted by increasing utility under the allocation, equal-utility
/// runs sorted by ascending player index. The consistent tie-break is what
/// makes the leximin++ comparison a strict weak order.
std::vector<int> player_ordering(const Allocation& a, const std::vector<Valuation>& valuations);

/// True iff a strictly precedes b. Walks the two player orderings position
/// by position; the first utility difference decides, and for
/// leximin_plus_plus a bundle-size difference decides when utilities tie at
/// that position. Equal signatures compare false both ways.
bool leximin_cmp(const Allocation& a, const Allocation& b, const std::vector<Valuation>& valuations,
                 ComparatorKind kind);

struct SolveOptions {
    /// Compare scaled utilities v_i(S) / v_i(M). Errors when some
    /// v_i(M) = 0.
    bool normalize = false;
    std::uint64_t max_states = kDefaultEnumCap;
    int jobs = 1;
};

/// Scans every complete allocation in canonical order, replacing the
/// incumbent only on strict precedence, so the result is the earliest
/// canonical maximal allocation — identical for any jobs setting.
Allocation leximin_solve(const std::vector<Valuation>& valuations, ComparatorKind kind,
                         const SolveOptions& options = {});

}  // namespace fairdiv
