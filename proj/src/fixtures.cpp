#include "fairdiv/fixtures.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "fairdiv/errors.hpp"
#include "fairdiv/leximin.hpp"
#include "fairdiv/protocols.hpp"

namespace fairdiv {

namespace {

Valuation additive_of(std::initializer_list<long long> values) {
    std::vector<Rational> v;
    v.reserve(values.size());
    for (long long x : values) v.emplace_back(x);
    return Valuation::additive(std::move(v));
}

InstanceFile make_instance(int n, int m, std::vector<std::string> goods,
                           std::vector<Valuation> valuations, std::string metadata) {
    InstanceFile f;
    f.n = n;
    f.m = m;
    f.goods = std::move(goods);
    f.valuations = std::move(valuations);
    f.metadata = std::move(metadata);
    return f;
}

// Two players over five goods; each player's value jumps by whole units as
// nested target sets are completed, plus 1/10 per good. Monotone with
// nonzero marginal utility, yet no EFX allocation is Pareto optimal.
Valuation nested_targets_valuation(const GoodSet& alpha, const GoodSet& beta, const GoodSet& gamma) {
    const int m = 5;
    const Rational eps(1, 10);
    std::vector<Rational> table(1ULL << m);
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
        const GoodSet s = GoodSet::from_mask(m, mask);
        const Rational size(s.size());
        Rational value;
        if (gamma.subset_of(s)) {
            value = Rational(3) + eps * (size - Rational(3));
        } else if (beta.subset_of(s)) {
            value = Rational(2) + eps * (size - Rational(2));
        } else if (alpha.subset_of(s)) {
            value = Rational(1) + eps * (size - Rational(1));
        } else {
            value = eps * size;
        }
        table[mask] = value;
    }
    return Valuation::table(m, std::move(table));
}

FixtureAssertion expect(std::string name, std::function<bool(std::string&)> run) {
    return FixtureAssertion{std::move(name), std::move(run)};
}

std::string flag_str(bool b) { return b ? "true" : "false"; }

Fixture make_fig1() {
    Fixture f;
    f.id = "fig1";
    f.instance = make_instance(
        2, 3, {"a", "b", "c"},
        {additive_of({5, 3, 1}), additive_of({5, 1, 3})},
        "two players, three goods; the Nash-welfare pick is EF1+PO but not EFX, while the "
        "normalized leximin pick is the unique-up-to-symmetry EFX+PO split");
    const auto vals = f.instance.valuations;

    f.assertions.push_back(expect("leximin(normalized) is EFX and PO", [vals](std::string& detail) {
        SolveOptions opt;
        opt.normalize = true;
        const Allocation got = leximin_solve(vals, ComparatorKind::leximin, opt);
        const Allocation want = Allocation::of(3, {{1, 2}, {0}});   // ({b,c},{a})
        const Allocation mirror = Allocation::of(3, {{0}, {1, 2}}); // ({a},{b,c})
        const FairnessReport rep = fairness_report(got, vals, {}, /*include_pareto=*/true);
        detail = got.to_string() + " efx=" + flag_str(rep.efx) +
                 " po=" + flag_str(rep.pareto_optimal.value());
        return (got == want || got == mirror) && rep.efx && rep.pareto_optimal.value();
    }));

    f.assertions.push_back(expect("max-nash-welfare is EF1 and PO but not EFX", [vals](std::string& detail) {
        const Allocation got = max_nash_welfare(vals);
        const Allocation want = Allocation::of(3, {{0, 1}, {2}});   // ({a,b},{c})
        const Allocation mirror = Allocation::of(3, {{1}, {0, 2}}); // ({b},{a,c})
        const FairnessReport rep = fairness_report(got, vals, {}, /*include_pareto=*/true);
        detail = got.to_string() + " ef1=" + flag_str(rep.ef1) + " efx=" + flag_str(rep.efx) +
                 " po=" + flag_str(rep.pareto_optimal.value());
        bool witness_ok = rep.efx_witness && rep.efx_witness->envious == 1 &&
                          rep.efx_witness->envied == 0 && rep.efx_witness->good == 1;
        return (got == want || got == mirror) && rep.ef1 && !rep.efx && witness_ok &&
               rep.pareto_optimal.value();
    }));

    f.assertions.push_back(expect("EFX+PO allocations are exactly one split and its mirror",
                                  [vals](std::string& detail) {
        const EfxExistenceReport rep = efx_existence_report(vals, /*require_po=*/true);
        detail = std::to_string(rep.witnesses.size()) + " witnesses";
        return rep.exists && rep.witnesses.size() == 2 &&
               rep.witnesses[0] == Allocation::of(3, {{1, 2}, {0}}) &&
               rep.witnesses[1] == Allocation::of(3, {{0}, {1, 2}});
    }));
    return f;
}

Fixture make_fig4() {
    Fixture f;
    f.id = "fig4";
    f.instance = make_instance(
        3, 4, {"a", "b", "c", "d"},
        {additive_of({14, 3, 2, 1}), additive_of({7, 6, 4, 3}), additive_of({20, 0, 0, 0})},
        "three players valuing the full set equally; the only allocation with every utility "
        ">= 4 is the leximin++ pick, and it is not EFX");
    const auto vals = f.instance.valuations;

    f.assertions.push_back(expect("leximin++ returns ({b,d},{c},{a})", [vals](std::string& detail) {
        SolveOptions opt;
        opt.normalize = true;  // totals are equal, so this matches the raw comparison
        const Allocation got = leximin_solve(vals, ComparatorKind::leximin_plus_plus, opt);
        detail = got.to_string();
        return got == Allocation::of(4, {{1, 3}, {2}, {0}});
    }));

    f.assertions.push_back(expect("that allocation fails EFX with witness (2,1,d)", [vals](std::string& detail) {
        const Allocation a = Allocation::of(4, {{1, 3}, {2}, {0}});
        const FairnessReport rep = fairness_report(a, vals);
        const Rational own = vals[1].value(a.bundle(1));
        const Rational reduced = vals[1].value(a.bundle(0).minus(3));
        detail = "efx=" + flag_str(rep.efx) + " v2(own)=" + own.str() + " v2(other-d)=" + reduced.str();
        const bool witness_ok = rep.efx_witness && rep.efx_witness->envious == 1 &&
                                rep.efx_witness->envied == 0 && rep.efx_witness->good == 3;
        return !rep.efx && witness_ok && own == Rational(4) && reduced == Rational(6);
    }));
    return f;
}

Fixture make_thm6() {
    Fixture f;
    f.id = "thm6";
    f.instance = make_instance(2, 3, {"a", "b", "c"},
                               {additive_of({2, 1, 0}), additive_of({2, 0, 1})},
                               "additive with zero-value goods: EFX allocations exist but none is PO");
    const auto vals = f.instance.valuations;

    f.assertions.push_back(expect("no allocation is both EFX and PO", [vals](std::string& detail) {
        const EfxExistenceReport rep = efx_existence_report(vals, /*require_po=*/true);
        detail = "exists=" + flag_str(rep.exists);
        return !rep.exists;
    }));
    f.assertions.push_back(expect("EFX alone is satisfiable", [vals](std::string& detail) {
        const EfxExistenceReport rep = efx_existence_report(vals, /*require_po=*/false);
        detail = std::to_string(rep.witnesses.size()) + " witnesses";
        return rep.exists;
    }));
    return f;
}

Fixture make_thm7() {
    Fixture f;
    f.id = "thm7";
    std::vector<Rational> table{Rational(0), Rational(0), Rational(1), Rational(2)};
    const Valuation v = Valuation::table(2, std::move(table));
    f.instance = make_instance(2, 2, {"a", "b"}, {v, v},
                               "identical non-additive pair valuation: leximin and leximin++ "
                               "disagree, and no EFX allocation is PO");
    const auto vals = f.instance.valuations;

    f.assertions.push_back(expect("no allocation is both EFX and PO", [vals](std::string& detail) {
        const EfxExistenceReport rep = efx_existence_report(vals, /*require_po=*/true);
        detail = "exists=" + flag_str(rep.exists);
        return !rep.exists;
    }));
    f.assertions.push_back(expect("EFX allocations are ({b},{a}) and its mirror", [vals](std::string& detail) {
        const EfxExistenceReport rep = efx_existence_report(vals, /*require_po=*/false);
        std::ostringstream os;
        for (const Allocation& a : rep.witnesses) os << a.to_string() << " ";
        detail = os.str();
        return rep.witnesses.size() == 2 && rep.witnesses[0] == Allocation::of(2, {{1}, {0}}) &&
               rep.witnesses[1] == Allocation::of(2, {{0}, {1}});
    }));
    f.assertions.push_back(expect("leximin and leximin++ pick different allocations", [vals](std::string& detail) {
        const Allocation plain = leximin_solve(vals, ComparatorKind::leximin);
        const Allocation plus = leximin_solve(vals, ComparatorKind::leximin_plus_plus);
        detail = "leximin=" + plain.to_string() + " leximin++=" + plus.to_string();
        return plain == Allocation::of(2, {{0, 1}, {}}) && plus == Allocation::of(2, {{1}, {0}});
    }));
    return f;
}

Fixture make_thm9() {
    Fixture f;
    f.id = "thm9";
    const int m = 5;
    const Valuation v1 = nested_targets_valuation(GoodSet::of(m, {0}), GoodSet::of(m, {1, 3}),
                                                  GoodSet::of(m, {0, 2, 3}));
    const Valuation v2 = nested_targets_valuation(GoodSet::of(m, {1}), GoodSet::of(m, {0, 3}),
                                                  GoodSet::of(m, {1, 3, 4}));
    f.instance = make_instance(2, m, {"a", "b", "c", "d", "e"}, {v1, v2},
                               "nonzero marginal utility everywhere, yet no EFX allocation is PO");
    const auto vals = f.instance.valuations;

    f.assertions.push_back(expect("no allocation is both EFX and PO", [vals](std::string& detail) {
        const EfxExistenceReport rep = efx_existence_report(vals, /*require_po=*/true);
        detail = "exists=" + flag_str(rep.exists);
        return !rep.exists;
    }));
    f.assertions.push_back(expect("({a,c,e},{b,d}) is an EFX witness", [vals](std::string& detail) {
        const EfxExistenceReport rep = efx_existence_report(vals, /*require_po=*/false);
        const Allocation want = Allocation::of(5, {{0, 2, 4}, {1, 3}});
        bool found = false;
        for (const Allocation& a : rep.witnesses) {
            if (a == want) found = true;
        }
        detail = std::to_string(rep.witnesses.size()) + " witnesses";
        return rep.exists && found;
    }));
    f.assertions.push_back(expect("({a,c,d},{b,e}) dominates the EFX witness", [vals](std::string& detail) {
        const Allocation efx_pick = Allocation::of(5, {{0, 2, 4}, {1, 3}});
        const Allocation better = Allocation::of(5, {{0, 2, 3}, {1, 4}});
        const FairnessReport rep = fairness_report(efx_pick, vals, {}, /*include_pareto=*/true);
        detail = "po=" + flag_str(rep.pareto_optimal.value());
        return !rep.pareto_optimal.value() && dominates(better, efx_pick, vals);
    }));
    return f;
}

Fixture make_sec6_left() {
    Fixture f;
    f.id = "sec6-left";
    f.instance = make_instance(2, 3, {"a", "b", "c"},
                               {additive_of({3, 1, 0}), additive_of({3, 0, 1})},
                               "({a,b},{c}) is EF1 but not 1/2-EFX");
    const auto vals = f.instance.valuations;
    f.assertions.push_back(expect("({a,b},{c}) is EF1 but not 1/2-EFX", [vals](std::string& detail) {
        const Allocation a = Allocation::of(3, {{0, 1}, {2}});
        const FairnessReport rep = fairness_report(a, vals, {Rational(1, 2)});
        detail = "ef1=" + flag_str(rep.ef1) + " half-efx=" + flag_str(rep.c_efx_at(Rational(1, 2)));
        return rep.ef1 && !rep.c_efx_at(Rational(1, 2));
    }));
    return f;
}

Fixture make_sec6_right() {
    Fixture f;
    f.id = "sec6-right";
    f.instance = make_instance(2, 4, {"a", "b", "c", "d"},
                               {additive_of({1, 1, 1, 1}), additive_of({1, 1, 1, 1})},
                               "({a,b,c},{d}) is 1/2-EFX but not EF1");
    const auto vals = f.instance.valuations;
    f.assertions.push_back(expect("({a,b,c},{d}) is 1/2-EFX but not EF1", [vals](std::string& detail) {
        const Allocation a = Allocation::of(4, {{0, 1, 2}, {3}});
        const FairnessReport rep = fairness_report(a, vals, {Rational(1, 2)});
        detail = "ef1=" + flag_str(rep.ef1) + " half-efx=" + flag_str(rep.c_efx_at(Rational(1, 2)));
        return !rep.ef1 && rep.c_efx_at(Rational(1, 2));
    }));
    return f;
}

}  // namespace

const std::vector<Fixture>& bundled_fixtures() {
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> all;
        all.push_back(make_fig1());
        all.push_back(make_fig4());
        all.push_back(make_thm6());
        all.push_back(make_thm7());
        all.push_back(make_thm9());
        all.push_back(make_sec6_left());
        all.push_back(make_sec6_right());
        return all;
    }();
    return fixtures;
}

const Fixture& fixture_by_id(const std::string& id) {
    for (const Fixture& f : bundled_fixtures()) {
        if (f.id == id) return f;
    }
    throw usage_error("unknown fixture id: " + id);
}

int run_all_fixtures(std::ostream& out) {
    int failures = 0;
    for (const Fixture& f : bundled_fixtures()) {
        for (const FixtureAssertion& assertion : f.assertions) {
            std::string detail;
            bool ok = false;
            try {
                ok = assertion.run(detail);
            } catch (const std::exception& e) {
                detail = std::string("exception: ") + e.what();
            }
            out << std::left << std::setw(11) << f.id << "  " << std::setw(58) << assertion.name
                << "  " << (ok ? "pass" : "FAIL");
            if (!detail.empty()) out << "  [" << detail << "]";
            out << "\n";
            if (!ok) ++failures;
        }
    }
    return failures;
}

}  // namespace fairdiv
