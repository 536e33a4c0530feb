#pragma once

#include <cstdint>
#include <vector>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

enum class GeneratedKind {
    additive,                    // independent positive per-good values
    identical_table_monotone,    // one random monotone normalized table, shared
    identical_ranking_additive,  // per-player additive values over one shared good ordering
    budget_additive_subadditive, // v(S) = min(B, sum of weights), as a table
};

/// Deterministic per seed: the same (kind, m, n, seed) always yields the
/// same valuations, on every platform.
std::vector<Valuation> generate_random(GeneratedKind kind, int m, int n, std::uint64_t seed);

/// identical_table_monotone variant with strictly positive increments, so
/// the result also has nonzero marginal utility.
std::vector<Valuation> generate_random_identical_table_nmu(int m, int n, std::uint64_t seed);

}  // namespace fairdiv
