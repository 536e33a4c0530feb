// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria. Every tolerance is pinned here; nothing is
// deferred to runtime configuration.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/fixtures.hpp"
#include "fairdiv/generators.hpp"
#include "fairdiv/kneser.hpp"
#include "fairdiv/leximin.hpp"
#include "fairdiv/protocols.hpp"

using namespace fairdiv;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

// ---------------------------------------------------------------------------
// Criterion 1: the three-good split instance.
// ---------------------------------------------------------------------------
void criterion_1(std::string& detail) {
    const auto start = Clock::now();
    const auto vals = fixture_by_id("fig1").instance.valuations;

    SolveOptions opt;
    opt.normalize = true;
    const Allocation lex = leximin_solve(vals, ComparatorKind::leximin, opt);
    const Allocation stated = Allocation::of(3, {{0}, {1, 2}});
    const Allocation mirror = Allocation::of(3, {{1, 2}, {0}});
    require(lex == stated || lex == mirror, "leximin pick is not the expected split");
    const FairnessReport lex_rep = fairness_report(lex, vals, {}, true);
    require(lex_rep.efx, "leximin pick is not EFX");
    require(lex_rep.pareto_optimal.value(), "leximin pick is not PO");

    const Allocation nash = max_nash_welfare(vals);
    const Allocation nash_stated = Allocation::of(3, {{0, 1}, {2}});
    const Allocation nash_mirror = Allocation::of(3, {{1}, {0, 2}});
    require(nash == nash_stated || nash == nash_mirror, "nash-welfare pick is not the expected split");
    const FairnessReport nash_rep = fairness_report(nash, vals, {}, true);
    require(nash_rep.ef1, "nash-welfare pick is not EF1");
    require(!nash_rep.efx, "nash-welfare pick should fail EFX");
    require(nash_rep.efx_witness && nash_rep.efx_witness->envious == 1 &&
                nash_rep.efx_witness->envied == 0 && nash_rep.efx_witness->good == 1,
            "EFX witness is not (player 2, player 1, good b)");
    require(nash_rep.pareto_optimal.value(), "nash-welfare pick is not PO");

    const double elapsed = seconds_since(start);
    require(elapsed < 1.0, "runtime exceeded 1 s");
    std::ostringstream os;
    os << "leximin=" << lex.to_string() << " mnw=" << nash.to_string() << " in " << std::fixed
       << std::setprecision(3) << elapsed << "s";
    detail = os.str();
}

// ---------------------------------------------------------------------------
// Criterion 2: impossibility fixtures via the exhaustive existence scan.
// ---------------------------------------------------------------------------
void criterion_2(std::string& detail) {
    std::ostringstream os;
    for (const std::string id : {"thm6", "thm7", "thm9"}) {
        const auto start = Clock::now();
        const auto vals = fixture_by_id(id).instance.valuations;
        require(!efx_existence_report(vals, /*require_po=*/true).exists,
                id + ": an EFX+PO allocation unexpectedly exists");
        const double elapsed = seconds_since(start);
        require(elapsed < 1.0, id + ": runtime exceeded 1 s");
        os << id << "=" << std::fixed << std::setprecision(3) << elapsed << "s ";
    }

    const auto thm9 = fixture_by_id("thm9").instance.valuations;
    const EfxExistenceReport no_po = efx_existence_report(thm9, /*require_po=*/false);
    const Allocation efx_pick = Allocation::of(5, {{0, 2, 4}, {1, 3}});
    bool found = false;
    for (const Allocation& a : no_po.witnesses) {
        if (a == efx_pick) found = true;
    }
    require(found, "thm9: ({a,c,e},{b,d}) missing from the EFX witnesses");
    const FairnessReport rep = fairness_report(efx_pick, thm9, {}, /*include_pareto=*/true);
    require(!rep.pareto_optimal.value(), "thm9: the EFX witness should fail the PO scan");
    require(dominates(Allocation::of(5, {{0, 2, 3}, {1, 4}}), efx_pick, thm9),
            "thm9: ({a,c,d},{b,e}) should dominate the EFX witness");
    detail = os.str() + "dominating pair confirmed";
}

// ---------------------------------------------------------------------------
// Criterion 3: the three-player instance where leximin++ fails EFX.
// ---------------------------------------------------------------------------
void criterion_3(std::string& detail) {
    const auto start = Clock::now();
    const auto vals = fixture_by_id("fig4").instance.valuations;
    SolveOptions opt;
    opt.normalize = true;
    const Allocation got = leximin_solve(vals, ComparatorKind::leximin_plus_plus, opt);
    require(got == Allocation::of(4, {{1, 3}, {2}, {0}}), "leximin++ pick is not ({b,d},{c},{a})");
    const FairnessReport rep = fairness_report(got, vals);
    require(!rep.efx, "leximin++ pick should fail EFX");
    require(rep.efx_witness && rep.efx_witness->envious == 1 && rep.efx_witness->envied == 0 &&
                rep.efx_witness->good == 3,
            "EFX witness is not (player 2, player 1, good d)");
    require(vals[1].value(got.bundle(1)) == Rational(4), "v2(own) should be exactly 4");
    require(vals[1].value(got.bundle(0).minus(3)) == Rational(6), "v2({b}) should be exactly 6");
    const double elapsed = seconds_since(start);
    require(elapsed < 1.0, "runtime exceeded 1 s");
    std::ostringstream os;
    os << got.to_string() << " v2(own)=4 < v2(b)=6 in " << std::fixed << std::setprecision(3)
       << elapsed << "s";
    detail = os.str();
}

// ---------------------------------------------------------------------------
// Criterion 4: strict-weak-order laws for both comparators.
// ---------------------------------------------------------------------------
void check_order_laws(int n, int m, std::uint64_t seed, std::uint64_t& triples) {
    std::vector<Valuation> vals;
    for (int i = 0; i < n; ++i) {
        vals.push_back(generate_random(GeneratedKind::identical_table_monotone, m, 1,
                                       seed * 97 + static_cast<std::uint64_t>(i))[0]);
    }
    std::vector<Allocation> all;
    for_each_allocation(n, m, [&](const Allocation& a, std::uint64_t) { all.push_back(a); });
    const std::size_t count = all.size();

    for (ComparatorKind kind : {ComparatorKind::leximin, ComparatorKind::leximin_plus_plus}) {
        // rel[i][j]: -1 if all[i] < all[j], +1 if >, 0 if incomparable.
        std::vector<std::vector<int>> rel(count, std::vector<int>(count, 0));
        for (std::size_t i = 0; i < count; ++i) {
            require(!leximin_cmp(all[i], all[i], vals, kind), "irreflexivity violated");
            for (std::size_t j = i + 1; j < count; ++j) {
                const bool lt = leximin_cmp(all[i], all[j], vals, kind);
                const bool gt = leximin_cmp(all[j], all[i], vals, kind);
                require(!(lt && gt), "asymmetry violated");
                rel[i][j] = lt ? -1 : (gt ? 1 : 0);
                rel[j][i] = -rel[i][j];
            }
        }
        for (std::size_t a = 0; a < count; ++a) {
            for (std::size_t b = 0; b < count; ++b) {
                for (std::size_t c = 0; c < count; ++c) {
                    if (rel[a][b] == -1 && rel[b][c] == -1) {
                        require(rel[a][c] == -1, "transitivity violated");
                    }
                    if (rel[a][b] == 0 && rel[b][c] == 0) {
                        require(rel[a][c] == 0, "incomparability transitivity violated");
                    }
                    ++triples;
                }
            }
        }
    }
}

void criterion_4(std::string& detail) {
    std::uint64_t triples = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) check_order_laws(2, 3, seed, triples);
    for (std::uint64_t seed = 0; seed < 5; ++seed) check_order_laws(3, 4, 1000 + seed, triples);
    detail = std::to_string(triples) + " ordered triples, zero violations";
}

// ---------------------------------------------------------------------------
// Criterion 5: the four existence guarantees behind the solvers.
// ---------------------------------------------------------------------------
void criterion_5(std::string& detail) {
    const auto start = Clock::now();

    // (a) leximin++ on identical monotone tables is EFX.
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 2 + static_cast<int>(seed % 2);
        const int m = 2 + static_cast<int>(seed % 5);
        const auto vals = generate_random(GeneratedKind::identical_table_monotone, m, n, seed);
        require(is_efx(leximin_solve(vals, ComparatorKind::leximin_plus_plus), vals),
                "5a: leximin++ output not EFX at seed " + std::to_string(seed));
    }

    // (b) cut-and-choose on distinct general tables is EFX.
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const int m = 2 + static_cast<int>(seed % 5);
        const Valuation v1 = generate_random(GeneratedKind::identical_table_monotone, m, 1, 7000 + seed)[0];
        const Valuation v2 = generate_random(GeneratedKind::identical_table_monotone, m, 1, 9000 + seed)[0];
        require(is_efx(cut_and_choose(v1, v2), {v1, v2}),
                "5b: cut-and-choose output not EFX at seed " + std::to_string(seed));
    }

    // (c) plain leximin on identical nonzero-marginal tables is EFX and PO.
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const int n = 2 + static_cast<int>(seed % 2);
        const int m = 2 + static_cast<int>(seed % 5);
        const auto vals = generate_random_identical_table_nmu(m, n, seed);
        const Allocation a = leximin_solve(vals, ComparatorKind::leximin);
        require(is_efx(a, vals), "5c: leximin output not EFX at seed " + std::to_string(seed));
        require(fairness_report(a, vals, {}, true).pareto_optimal.value(),
                "5c: leximin output not PO at seed " + std::to_string(seed));
    }

    // (d) two players, positive additive, normalized leximin is EFX and PO.
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int m = 2 + static_cast<int>(seed % 7);
        const auto vals = generate_random(GeneratedKind::additive, m, 2, 40000 + seed);
        SolveOptions opt;
        opt.normalize = true;
        const Allocation a = leximin_solve(vals, ComparatorKind::leximin, opt);
        require(is_efx(a, vals), "5d: leximin output not EFX at seed " + std::to_string(seed));
        require(fairness_report(a, vals, {}, true).pareto_optimal.value(),
                "5d: leximin output not PO at seed " + std::to_string(seed));
    }

    const double elapsed = seconds_since(start);
    require(elapsed < 300.0, "suite exceeded 5 minutes");
    std::ostringstream os;
    os << "1300 instances, zero violations, " << std::fixed << std::setprecision(1) << elapsed << "s";
    detail = os.str();
}

// ---------------------------------------------------------------------------
// Criterion 6: the 1/2-EFX round protocol on budget-additive instances.
// ---------------------------------------------------------------------------
void criterion_6(std::string& detail) {
    const Rational half(1, 2);
    double max_rounds_over_m = 0;
    std::uint64_t max_rounds = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 2 + static_cast<int>(seed % 2);
        const int m = 4 + static_cast<int>(seed % 4);
        const auto vals = generate_random(GeneratedKind::budget_additive_subadditive, m, n, seed);
        const auto [alloc, trace] = half_efx(vals);
        require(alloc.complete(), "6: allocation incomplete at seed " + std::to_string(seed));
        require(is_c_efx(alloc, vals, half), "6: output not 1/2-EFX at seed " + std::to_string(seed));
        for (const HalfEfxRound& round : trace.rounds) {
            require(is_c_efx(round.after, vals, half),
                    "6: snapshot not 1/2-EFX at seed " + std::to_string(seed));
        }
        std::uint64_t cap = static_cast<std::uint64_t>(m);
        for (int g = 0; g < m; ++g) cap *= static_cast<std::uint64_t>(n + 1);
        require(trace.round_count() <= cap, "6: round bound m(n+1)^m violated");
        max_rounds = std::max(max_rounds, trace.round_count());
        max_rounds_over_m =
            std::max(max_rounds_over_m, static_cast<double>(trace.round_count()) / m);
    }
    std::ostringstream os;
    os << "300 instances 1/2-EFX incl. snapshots; max rounds " << max_rounds << ", max rounds/m "
       << std::fixed << std::setprecision(2) << max_rounds_over_m << " (3m reference: report-only)";
    detail = os.str();
}

// ---------------------------------------------------------------------------
// Criterion 7: identical-ranking protocol, correctness plus a timing fit.
// ---------------------------------------------------------------------------
void criterion_7(std::string& detail) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 2 + static_cast<int>(seed % 3);
        const int m = 6 + static_cast<int>(seed % 5);
        const auto vals = generate_random(GeneratedKind::identical_ranking_additive, m, n, seed);
        require(is_efx(same_ranking_efx(vals), vals),
                "7: output not EFX at seed " + std::to_string(seed));
    }

    // Wall-clock growth in m at fixed n = 3: median of repeated batches,
    // least-squares slope in log-log space must stay at or below 2.
    const std::vector<int> sizes{10, 20, 40, 80};
    std::vector<double> medians;
    for (const int m : sizes) {
        std::vector<std::vector<Valuation>> batch;
        for (std::uint64_t i = 0; i < 10; ++i) {
            batch.push_back(generate_random(GeneratedKind::identical_ranking_additive, m, 3,
                                            5000 + static_cast<std::uint64_t>(m) * 31 + i));
        }
        std::vector<double> times;
        for (int rep = 0; rep < 15; ++rep) {
            const auto t0 = Clock::now();
            for (const auto& vals : batch) (void)same_ranking_efx(vals);
            times.push_back(seconds_since(t0));
        }
        std::sort(times.begin(), times.end());
        medians.push_back(times[times.size() / 2]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double x = std::log2(static_cast<double>(sizes[i]));
        const double y = std::log2(medians[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = static_cast<double>(sizes.size());
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    std::ostringstream os;
    os << "300 instances EFX; fitted time exponent " << std::fixed << std::setprecision(2) << slope
       << " (limit 2) over m=10..80";
    require(slope <= 2.0, "7: " + os.str());
    detail = os.str();
}

// ---------------------------------------------------------------------------
// Criterion 8: EF1 and 1/2-EFX are incomparable.
// ---------------------------------------------------------------------------
void criterion_8(std::string& detail) {
    const Rational half(1, 2);
    const auto left = fixture_by_id("sec6-left").instance.valuations;
    const FairnessReport lrep = fairness_report(Allocation::of(3, {{0, 1}, {2}}), left, {half});
    require(lrep.ef1, "sec6-left should be EF1");
    require(!lrep.c_efx_at(half), "sec6-left should fail 1/2-EFX");

    const auto right = fixture_by_id("sec6-right").instance.valuations;
    const FairnessReport rrep = fairness_report(Allocation::of(4, {{0, 1, 2}, {3}}), right, {half});
    require(!rrep.ef1, "sec6-right should fail EF1");
    require(rrep.c_efx_at(half), "sec6-right should be 1/2-EFX");
    detail = "EF1 vs 1/2-EFX separate in both directions";
}

// ---------------------------------------------------------------------------
// Criterion 9: the Kneser lab.
// ---------------------------------------------------------------------------
void criterion_9(std::string& detail) {
    const auto start = Clock::now();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(5, 2, seed));
        require(verify_correspondence(2, oracle),
                "9: correspondence failed at seed " + std::to_string(seed));
    }
    const double corr_elapsed = seconds_since(start);
    require(corr_elapsed < 10.0, "9: correspondence sweep exceeded 10 s");

    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto oracle = std::make_shared<ScoreOracle>(ScoreOracle::random(5, 2, seed));
        const ClassReport rep = check_class(build_reduction_valuation(2, oracle));
        require(rep.monotone && rep.submodular,
                "9: reduction valuation not submodular at seed " + std::to_string(seed));
    }

    for (int k : {1, 2, 3}) require(verify_diameter(k), "9: diameter wrong at k=" + std::to_string(k));

    const KneserGraph petersen(5, 2);
    for (int r = 1; r <= 10; ++r) {
        require(verify_boundary_bound(petersen, r).holds,
                "9: boundary bound fails at r=" + std::to_string(r));
    }
    for (int k = 1; k <= 10; ++k) {
        require(verify_beta_monotone(k), "9: beta not monotone at k=" + std::to_string(k));
    }
    const CrossIntersectResult cross = verify_cross_intersecting(5, 2);
    require(cross.max_product == 16, "9: cross-intersecting max product is not 16");
    require(cross.holds && cross.tight, "9: cross-intersecting bound not met tightly");
    require(lower_bound_value(2) == Rational(4, 5), "9: lower bound value at k=2 is not 4/5");

    std::ostringstream os;
    os << "100 correspondence seeds in " << std::fixed << std::setprecision(2) << corr_elapsed
       << "s; diameter k<=3; Petersen bounds r=1..10; beta k<=10; cross product 16; bound 4/5";
    detail = os.str();
}

void criterion_9_slow(std::string& detail) {
    for (int k : {4, 5, 6}) {
        require(verify_diameter(k), "9-slow: diameter wrong at k=" + std::to_string(k));
    }
    detail = "diameter equals k for k=4,5,6";
}

// ---------------------------------------------------------------------------
// Criterion 10: oracle agreement.
// ---------------------------------------------------------------------------

// Independent Pareto check: recursive good-by-good assignment, no shared
// code with the enumeration-backed scan it cross-validates.
bool po_oracle(const Allocation& a, const std::vector<Valuation>& vals) {
    const int n = a.players();
    const int m = a.goods_count();
    std::vector<Rational> base(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        base[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(i)].value(a.bundle(i));
    }

    std::vector<GoodSet> bundles(static_cast<std::size_t>(n), GoodSet::empty_set(m));
    bool dominated = false;
    std::function<void(int)> recurse = [&](int g) {
        if (dominated) return;
        if (g == m) {
            bool strict = false;
            for (int i = 0; i < n; ++i) {
                const Rational u =
                    vals[static_cast<std::size_t>(i)].value(bundles[static_cast<std::size_t>(i)]);
                if (u < base[static_cast<std::size_t>(i)]) return;
                if (u > base[static_cast<std::size_t>(i)]) strict = true;
            }
            if (strict) dominated = true;
            return;
        }
        for (int p = 0; p < n && !dominated; ++p) {
            bundles[static_cast<std::size_t>(p)] = bundles[static_cast<std::size_t>(p)].plus(g);
            recurse(g + 1);
            bundles[static_cast<std::size_t>(p)] = bundles[static_cast<std::size_t>(p)].minus(g);
        }
    };
    recurse(0);
    return !dominated;
}

void criterion_10(std::string& detail) {
    std::mt19937_64 rng(0xacce97edULL);
    int po_count = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int m = 3 + static_cast<int>(rng() % 4);
        std::vector<Valuation> vals;
        if (rng() % 2 == 0) {
            vals = generate_random(GeneratedKind::additive, m, n, rng());
        } else {
            for (int i = 0; i < n; ++i) {
                vals.push_back(generate_random(GeneratedKind::identical_table_monotone, m, 1, rng())[0]);
            }
        }
        std::uint64_t states = 1;
        for (int g = 0; g < m; ++g) states *= static_cast<std::uint64_t>(n);
        const Allocation a = Allocation::from_canonical_index(n, m, rng() % states);
        const bool scan = fairness_report(a, vals, {}, /*include_pareto=*/true).pareto_optimal.value();
        const bool oracle = po_oracle(a, vals);
        require(scan == oracle, "10: PO oracles disagree at trial " + std::to_string(t));
        if (scan) ++po_count;
    }

    std::uint64_t checked = 0;
    for (int n = 1; n <= 4; ++n) {
        for (int m = 0; m <= 8; ++m) {
            std::set<std::string> seen;
            std::uint64_t expected = 1;
            for (int g = 0; g < m; ++g) expected *= static_cast<std::uint64_t>(n);
            for_each_allocation(n, m, [&](const Allocation& a, std::uint64_t) {
                seen.insert(a.to_string());
            });
            require(seen.size() == expected,
                    "10: enumeration of (" + std::to_string(n) + "," + std::to_string(m) +
                        ") yielded " + std::to_string(seen.size()) + " distinct allocations");
            checked += expected;
        }
    }
    detail = "1000 PO agreements (" + std::to_string(po_count) + " PO); " +
             std::to_string(checked) + " enumerated allocations all distinct";
}

struct Criterion {
    std::string label;
    std::function<void(std::string&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"criterion 1: split-instance reproduction (leximin vs max Nash welfare)", criterion_1},
        {"criterion 2: impossibility fixtures (no EFX+PO on thm6/thm7/thm9)", criterion_2},
        {"criterion 3: leximin++ non-EFX reproduction on fig4", criterion_3},
        {"criterion 4: comparator strict-weak-order laws", criterion_4},
        {"criterion 5: EFX existence guarantees (leximin++/cut-and-choose/leximin)", criterion_5},
        {"criterion 6: 1/2-EFX protocol on budget-additive instances", criterion_6},
        {"criterion 7: identical-ranking protocol EFX + timing fit", criterion_7},
        {"criterion 8: EF1 / 1/2-EFX incomparability", criterion_8},
        {"criterion 9: Kneser lab (correspondence, diameter, bounds)", criterion_9},
        {"criterion 9-slow: odd-graph diameter k=4..6", criterion_9_slow},
        {"criterion 10: PO oracle agreement and enumeration counts", criterion_10},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = Clock::now();
        std::string detail;
        bool ok = true;
        try {
            c.run(detail);
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed = seconds_since(start);
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.label << " (" << std::fixed
                  << std::setprecision(2) << elapsed << "s)";
        if (!detail.empty()) std::cout << "\n       " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria pass"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures;
}
