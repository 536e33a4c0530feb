#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fairdiv/json_io.hpp"

namespace fairdiv {

struct FixtureAssertion {
    std::string name;
    /// Returns pass/fail; fills detail with the observed result either way.
    std::function<bool(std::string& detail)> run;
};

/// A bundled instance with the declarative expectations that make it a
/// fixture: each assertion re-derives the expected behavior through the
/// solver and checker modules.
struct Fixture {
    std::string id;
    InstanceFile instance;
    std::vector<FixtureAssertion> assertions;
};

/// The seven bundled fixtures: fig1, fig4, thm6, thm7, thm9, sec6-left,
/// sec6-right.
const std::vector<Fixture>& bundled_fixtures();

const Fixture& fixture_by_id(const std::string& id);  // usage_error if unknown

/// Runs every assertion of every fixture, printing one table row each.
/// Returns the number of failures.
int run_all_fixtures(std::ostream& out);

}  // namespace fairdiv
