#include "fairdiv/json_io.hpp"

#include <fstream>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw usage_error("instance schema: " + where + ": " + what);
}

Rational parse_rational_field(const nlohmann::json& j, const std::string& where) {
    if (!j.is_string()) {
        schema_error(where, "rationals must be exact strings (\"p\" or \"p/q\"), not JSON numbers");
    }
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const usage_error& e) {
        schema_error(where, e.what());
    }
}

Valuation parse_valuation(const nlohmann::json& j, int m, bool allow_nonmonotone,
                          const std::string& where) {
    if (!j.is_object()) schema_error(where, "valuation must be an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) schema_error(where + "/kind", "missing kind");
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "additive") {
        if (!j.contains("values") || !j.at("values").is_array()) {
            schema_error(where + "/values", "additive valuation needs a values array");
        }
        const auto& arr = j.at("values");
        if (static_cast<int>(arr.size()) != m) {
            schema_error(where + "/values", "expected " + std::to_string(m) + " per-good values, got " +
                                                std::to_string(arr.size()));
        }
        std::vector<Rational> values;
        values.reserve(arr.size());
        for (std::size_t g = 0; g < arr.size(); ++g) {
            Rational r = parse_rational_field(arr[g], where + "/values/" + std::to_string(g));
            if (r.is_negative()) schema_error(where + "/values/" + std::to_string(g), "negative value");
            values.push_back(std::move(r));
        }
        return Valuation::additive(std::move(values));
    }

    if (kind == "table") {
        if (!j.contains("m") || !j.at("m").is_number_integer()) {
            schema_error(where + "/m", "table valuation needs an integer m");
        }
        const int table_m = j.at("m").get<int>();
        if (table_m != m) {
            schema_error(where + "/m", "table m " + std::to_string(table_m) +
                                           " does not match instance m " + std::to_string(m));
        }
        if (m > Valuation::kMaxTableGoods) {
            schema_error(where + "/m", "table valuations support at most " +
                                           std::to_string(Valuation::kMaxTableGoods) + " goods");
        }
        if (!j.contains("entries") || !j.at("entries").is_object()) {
            schema_error(where + "/entries", "table valuation needs an entries object");
        }
        const auto& entries = j.at("entries");
        const std::uint64_t want = 1ULL << m;
        std::vector<Rational> by_mask(want);
        std::vector<bool> present(want, false);
        for (auto it = entries.begin(); it != entries.end(); ++it) {
            std::uint64_t mask = 0;
            try {
                std::size_t used = 0;
                mask = std::stoull(it.key(), &used, 10);
                if (used != it.key().size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                schema_error(where + "/entries/" + it.key(), "keys must be decimal subset masks");
            }
            if (mask >= want) {
                schema_error(where + "/entries/" + it.key(),
                             "mask out of range for m = " + std::to_string(m));
            }
            if (present[mask]) schema_error(where + "/entries/" + it.key(), "duplicate mask");
            present[mask] = true;
            by_mask[mask] = parse_rational_field(*it, where + "/entries/" + it.key());
        }
        for (std::uint64_t mask = 0; mask < want; ++mask) {
            if (!present[mask]) {
                schema_error(where + "/entries", "missing entry for mask " + std::to_string(mask));
            }
        }
        try {
            return Valuation::table(m, std::move(by_mask), /*enforce_monotone=*/!allow_nonmonotone);
        } catch (const usage_error& e) {
            schema_error(where, e.what());
        }
    }

    schema_error(where + "/kind", "unknown kind '" + kind + "' (expected additive or table)");
}

}  // namespace

bool InstanceFile::operator==(const InstanceFile& o) const {
    return n == o.n && m == o.m && goods == o.goods && metadata == o.metadata &&
           valuations == o.valuations;
}

InstanceFile parse_instance_json(const nlohmann::json& j, bool allow_nonmonotone) {
    if (!j.is_object()) schema_error("/", "instance must be a JSON object");
    InstanceFile instance;
    if (!j.contains("n") || !j.at("n").is_number_integer()) schema_error("/n", "missing integer n");
    if (!j.contains("m") || !j.at("m").is_number_integer()) schema_error("/m", "missing integer m");
    instance.n = j.at("n").get<int>();
    instance.m = j.at("m").get<int>();
    if (instance.n < 1) schema_error("/n", "need at least one player");
    if (instance.m < 0 || instance.m > GoodSet::kMaxGoods) schema_error("/m", "bad goods count");

    if (j.contains("goods")) {
        if (!j.at("goods").is_array()) schema_error("/goods", "goods must be an array of names");
        for (const auto& name : j.at("goods")) {
            if (!name.is_string()) schema_error("/goods", "good names must be strings");
            instance.goods.push_back(name.get<std::string>());
        }
        if (static_cast<int>(instance.goods.size()) != instance.m) {
            schema_error("/goods", "expected " + std::to_string(instance.m) + " names");
        }
    }
    if (j.contains("metadata")) {
        if (!j.at("metadata").is_string()) schema_error("/metadata", "metadata must be a string");
        instance.metadata = j.at("metadata").get<std::string>();
    }

    if (!j.contains("valuations") || !j.at("valuations").is_array()) {
        schema_error("/valuations", "missing valuations array");
    }
    const auto& vals = j.at("valuations");
    if (static_cast<int>(vals.size()) != instance.n) {
        schema_error("/valuations", "expected " + std::to_string(instance.n) + " valuations, got " +
                                        std::to_string(vals.size()));
    }
    for (std::size_t i = 0; i < vals.size(); ++i) {
        instance.valuations.push_back(
            parse_valuation(vals[i], instance.m, allow_nonmonotone, "/valuations/" + std::to_string(i)));
    }
    return instance;
}

InstanceFile parse_instance_file(const std::string& path, bool allow_nonmonotone) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw usage_error("instance file " + path + " is not valid JSON: " + e.what());
    }
    return parse_instance_json(j, allow_nonmonotone);
}

nlohmann::json instance_to_json(const InstanceFile& instance) {
    nlohmann::json j;
    j["n"] = instance.n;
    j["m"] = instance.m;
    if (!instance.goods.empty()) j["goods"] = instance.goods;
    if (!instance.metadata.empty()) j["metadata"] = instance.metadata;
    j["valuations"] = nlohmann::json::array();
    for (const Valuation& v : instance.valuations) {
        nlohmann::json vj;
        switch (v.kind()) {
            case Valuation::Kind::additive: {
                vj["kind"] = "additive";
                auto arr = nlohmann::json::array();
                for (const Rational& r : v.additive_values()) arr.push_back(r.str());
                vj["values"] = std::move(arr);
                break;
            }
            case Valuation::Kind::table: {
                vj["kind"] = "table";
                vj["m"] = v.goods_count();
                nlohmann::json entries = nlohmann::json::object();
                const auto& by_mask = v.table_values();
                for (std::size_t mask = 0; mask < by_mask.size(); ++mask) {
                    entries[std::to_string(mask)] = by_mask[mask].str();
                }
                vj["entries"] = std::move(entries);
                break;
            }
            case Valuation::Kind::kneser:
                throw usage_error("instance_to_json: oracle-backed valuations are not serializable");
        }
        j["valuations"].push_back(std::move(vj));
    }
    return j;
}

Allocation parse_allocation_json(const nlohmann::json& j, int players, int goods, bool allow_partial) {
    if (!j.is_object() || !j.contains("bundles") || !j.at("bundles").is_array()) {
        throw usage_error("allocation schema: expected {\"bundles\": [[...], ...]}");
    }
    const auto& bundles = j.at("bundles");
    if (static_cast<int>(bundles.size()) != players) {
        throw usage_error("allocation schema: expected " + std::to_string(players) +
                          " bundles, got " + std::to_string(bundles.size()));
    }
    Allocation a(players, goods);
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        if (!bundles[i].is_array()) throw usage_error("allocation schema: bundles must be arrays");
        for (const auto& good : bundles[i]) {
            if (!good.is_number_integer()) {
                throw usage_error("allocation schema: good indices must be integers");
            }
            const long long g = good.get<long long>();
            if (g < 0 || g >= goods) {
                throw usage_error("allocation schema: unknown good index " + std::to_string(g));
            }
            a.add_good(static_cast<int>(i), static_cast<int>(g));  // overlap -> usage_error
        }
    }
    if (!allow_partial && !a.complete()) {
        throw usage_error("allocation schema: allocation is partial (pass --partial to accept)");
    }
    return a;
}

Allocation parse_allocation_file(const std::string& path, int players, int goods, bool allow_partial) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open allocation file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw usage_error("allocation file " + path + " is not valid JSON: " + e.what());
    }
    return parse_allocation_json(j, players, goods, allow_partial);
}

nlohmann::json allocation_to_json(const Allocation& a) {
    nlohmann::json bundles = nlohmann::json::array();
    for (int i = 0; i < a.players(); ++i) bundles.push_back(a.bundle(i).goods());
    return nlohmann::json{{"bundles", std::move(bundles)}};
}

namespace {

nlohmann::json witness_to_json(const FairnessWitness& w) {
    nlohmann::json j{{"envious", w.envious}, {"envied", w.envied}};
    if (w.good) j["good"] = *w.good;
    return j;
}

}  // namespace

nlohmann::json fairness_report_to_json(const FairnessReport& report) {
    nlohmann::json j;
    j["envy_free"] = report.envy_free;
    j["ef1"] = report.ef1;
    j["efx"] = report.efx;
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [value, holds] : report.c_efx) c[value.str()] = holds;
    j["c_efx"] = std::move(c);
    j["pareto_optimal"] = report.pareto_optimal ? nlohmann::json(*report.pareto_optimal)
                                                : nlohmann::json(nullptr);

    nlohmann::json witnesses = nlohmann::json::object();
    if (report.envy_witness) witnesses["envy"] = witness_to_json(*report.envy_witness);
    if (report.ef1_witness) witnesses["ef1"] = witness_to_json(*report.ef1_witness);
    if (report.efx_witness) witnesses["efx"] = witness_to_json(*report.efx_witness);
    nlohmann::json cw = nlohmann::json::object();
    for (std::size_t t = 0; t < report.c_efx.size(); ++t) {
        if (report.c_efx_witnesses[t]) {
            cw[report.c_efx[t].first.str()] = witness_to_json(*report.c_efx_witnesses[t]);
        }
    }
    if (!cw.empty()) witnesses["c_efx"] = std::move(cw);
    if (report.dominating_allocation) {
        witnesses["dominating_allocation"] = allocation_to_json(*report.dominating_allocation);
    }
    j["witnesses"] = std::move(witnesses);
    return j;
}

nlohmann::json existence_report_to_json(const EfxExistenceReport& report) {
    nlohmann::json j;
    j["require_po"] = report.require_po;
    j["exists"] = report.exists;
    j["witness_count"] = report.witnesses.size();
    nlohmann::json w = nlohmann::json::array();
    for (const Allocation& a : report.witnesses) w.push_back(allocation_to_json(a));
    j["witnesses"] = std::move(w);
    return j;
}

nlohmann::json trace_to_json(const HalfEfxTrace& trace) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const HalfEfxRound& r : trace.rounds) {
        nlohmann::json rj;
        rj["pool"] = r.pool_before;
        rj["good"] = r.good;
        rj["recipient"] = r.recipient;
        rj["reassigned_to"] = r.reassigned_to ? nlohmann::json(*r.reassigned_to) : nlohmann::json(nullptr);
        rj["allocation"] = allocation_to_json(r.after);
        rounds.push_back(std::move(rj));
    }
    return nlohmann::json{{"rounds", std::move(rounds)}, {"round_count", trace.round_count()}};
}

std::string good_label(const InstanceFile& instance, int good) {
    if (good >= 0 && static_cast<std::size_t>(good) < instance.goods.size()) {
        return instance.goods[static_cast<std::size_t>(good)];
    }
    return std::to_string(good);
}

}  // namespace fairdiv
