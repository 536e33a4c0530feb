#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fairdiv/allocation.hpp"
#include "fairdiv/protocols.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

/// On-disk problem instance. All rationals travel as exact strings ("p/q"
/// or integer); numeric JSON literals are rejected so nothing is ever
/// rounded.
struct InstanceFile {
    int n = 0;
    int m = 0;
    std::vector<std::string> goods;  // optional display names, size 0 or m
    std::vector<Valuation> valuations;
    std::string metadata;

    bool operator==(const InstanceFile& o) const;
};

InstanceFile parse_instance_json(const nlohmann::json& j, bool allow_nonmonotone = false);
InstanceFile parse_instance_file(const std::string& path, bool allow_nonmonotone = false);
nlohmann::json instance_to_json(const InstanceFile& instance);

/// {"bundles": [[0,2],[1]]}; bundle count must equal the instance's n and
/// the allocation must be complete unless allow_partial.
Allocation parse_allocation_json(const nlohmann::json& j, int players, int goods,
                                 bool allow_partial = false);
Allocation parse_allocation_file(const std::string& path, int players, int goods,
                                 bool allow_partial = false);
nlohmann::json allocation_to_json(const Allocation& a);

nlohmann::json fairness_report_to_json(const FairnessReport& report);
nlohmann::json existence_report_to_json(const EfxExistenceReport& report);
nlohmann::json trace_to_json(const HalfEfxTrace& trace);

/// The label a good renders as: its name when the instance has names,
/// otherwise its index.
std::string good_label(const InstanceFile& instance, int good);

}  // namespace fairdiv
