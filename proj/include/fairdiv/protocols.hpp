#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/leximin.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

/// Cut-and-choose for two players with general valuations: player 1
/// partitions via the leximin++ solution computed against two copies of her
/// own valuation, player 2 takes her weakly preferred bundle. The result is
/// EFX under both valuations.
Allocation cut_and_choose(const Valuation& v1, const Valuation& v2,
                          std::uint64_t max_states = kDefaultEnumCap);

struct HalfEfxRound {
    std::vector<int> pool_before;     // pool contents at the start of the round
    int good = -1;                    // g*, the popped good
    int recipient = -1;               // the unenvied player who received g*
    std::optional<int> reassigned_to; // set when g* was re-routed to a violator
    Allocation after = Allocation(1, 0);  // snapshot after cycle elimination
};

struct HalfEfxTrace {
    std::vector<HalfEfxRound> rounds;
    std::uint64_t round_count() const { return rounds.size(); }
};

/// Round-based 1/2-EFX protocol for subadditive valuations: give the
/// lowest-index pool good to the lowest-index unenvied player; if that
/// pushes some player i below half the value of every-good-removed copies of
/// the new bundle, return i's bundle to the pool and hand i the new good
/// instead; then eliminate envy cycles. The 1/2-EFX guarantee needs
/// subadditive valuations, which the caller is responsible for; the round
/// cap m(n+1)^m holds regardless and overrunning it is an internal_error.
std::pair<Allocation, HalfEfxTrace> half_efx(const std::vector<Valuation>& valuations);

/// EFX protocol for additive valuations whose good rankings agree across
/// players: allocate goods in descending shared rank to the lowest-index
/// unenvied player, eliminating envy cycles every round. Runs in polynomial
/// time (utilities are maintained incrementally). A ranking disagreement is
/// a usage_error naming a witness pair of goods and players. When
/// round_snapshots is given, the allocation after every round is appended.
Allocation same_ranking_efx(const std::vector<Valuation>& valuations,
                            std::vector<Allocation>* round_snapshots = nullptr);

/// Polynomial-time EFX for two players with additive valuations: player 1
/// partitions with the identical-ranking protocol against two copies of
/// herself, player 2 takes her weakly preferred bundle.
Allocation two_player_additive_efx(const Valuation& v1, const Valuation& v2);

/// EFX and Pareto optimal allocation for n players sharing one additive
/// valuation, zero-value goods allowed: plain leximin over the goods with
/// positive value, then all zero-value goods go to the lowest-index
/// minimum-utility player.
Allocation efx_po_additive_identical(const Valuation& v, int players,
                                     std::uint64_t max_states = kDefaultEnumCap);

/// Maximum Nash welfare: among complete allocations maximizing the number
/// of players with positive utility, the earliest canonical one maximizing
/// the product of those players' utilities.
Allocation max_nash_welfare(const std::vector<Valuation>& valuations,
                            std::uint64_t max_states = kDefaultEnumCap);

}  // namespace fairdiv
